pub mod arith;
pub mod io;
pub mod ode;
pub mod quat;
pub mod split;
pub mod tower;
