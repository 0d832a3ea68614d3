pub mod ilp;
pub mod cnf;
