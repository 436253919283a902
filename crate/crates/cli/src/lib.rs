//! Front end for `tpgrass`: fan files, text reports and verification
//! against checked-in reference tables.

pub mod checks;
pub mod golden;
pub mod output;
