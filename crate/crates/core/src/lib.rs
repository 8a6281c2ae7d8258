pub mod coeff;
pub mod eulerint;
pub mod localstd;
pub mod merogerm;
pub mod multipoly;
pub mod newton;
pub mod planecurve;
pub mod cli;
