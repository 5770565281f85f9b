use crate::error::{Error, Result};
use std::fmt;

/// A single-letter polynomial variable. The letter `a` is reserved for the
/// field generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(char);

impl Var {
    pub const T: Var = Var('t');
    pub const U: Var = Var('u');
    pub const W: Var = Var('w');
    pub const X: Var = Var('x');
    pub const Y: Var = Var('y');
    pub const S: Var = Var('s');

    pub fn new(c: char) -> Result<Var> {
        if c.is_ascii_lowercase() && c != 'a' {
            Ok(Var(c))
        } else {
            Err(Error::Invalid(format!("'{c}' is not a variable name")))
        }
    }

    pub fn name(self) -> char {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
