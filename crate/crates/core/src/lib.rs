pub mod clean;
pub mod export;
pub mod graph;
pub mod ring;
pub mod solver;
pub mod srg;
pub mod theory;
