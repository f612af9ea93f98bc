pub mod brauer_residue;
pub mod dp2geom;
pub mod exactalg;
pub mod galois_lattice;
pub mod golden;
pub mod polyring;
pub mod refvar;
