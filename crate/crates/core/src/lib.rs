//! Exp-log normal forms for minimal logic, the G4ip sequent calculus and
//! its arithmetical shadow, the HS calculus of polynomial inequalities.

pub mod cli;
pub mod g4ip;
pub mod gen;
pub mod hs;
pub mod interp;
pub mod normalize;
pub mod syntax;
