pub mod apps;
pub mod bench;
pub mod calib;
pub mod curves;
