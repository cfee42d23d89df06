pub mod cli;
pub mod dde;
pub mod families;
pub mod integrating_factor;
pub mod polycore;
pub mod verify;
