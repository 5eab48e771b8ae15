pub mod caps;
pub mod certifier;
pub mod complex;
pub mod game;
pub mod lattice;
pub mod oracles;
pub mod suite;
