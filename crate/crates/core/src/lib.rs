pub mod lattice;
pub mod finroot;
pub mod earoot;
pub mod weyl;
pub mod reflect;
pub mod liepres;
pub mod tables;
pub mod worked;
