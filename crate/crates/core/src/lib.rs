pub mod decomp;
pub mod identities;
pub mod kernel;
pub mod permstats;
pub mod qseries;
