pub mod coxeter;
pub mod gp;
pub mod graph;
pub mod inv;
pub mod qfock;
