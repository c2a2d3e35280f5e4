pub mod classifiers;
pub mod corpus;
pub mod criteria;
pub mod evaluation;
pub mod analysis;
pub mod cli;
