pub mod catalog;
pub mod checks;
pub mod cli;
pub mod embeddings;
pub mod exact_linalg;
pub mod genericity;
pub mod lie_core;
pub mod par;
pub mod real_forms;
