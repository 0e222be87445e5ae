pub mod conic_system;
pub mod counting;
pub mod gw_formulas;
pub mod poly;
pub mod quasiline;
pub mod schur_vanish;
