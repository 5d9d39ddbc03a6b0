pub mod axioms;
pub mod checker;
pub mod cli;
pub mod codec;
pub mod enumerator;
pub mod fixtures;
pub mod lemmas;
pub mod par;
pub mod predicates;
pub mod primes;
pub mod reader;
pub mod syntax;
