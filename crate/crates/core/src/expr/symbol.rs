use std::fmt;

pub const NUM_SYMBOLS: usize = 9;

/// The fixed indeterminates of the symbolic layer: the five model
/// coefficients, the Dunkl parameter, the energy, the mass length scale and
/// the mass scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Alpha1,
    Alpha2,
    Alpha3,
    Alpha4,
    Alpha5,
    Mu,
    E,
    A,
    M0,
}

impl Symbol {
    pub const ALL: [Symbol; NUM_SYMBOLS] = [
        Symbol::Alpha1,
        Symbol::Alpha2,
        Symbol::Alpha3,
        Symbol::Alpha4,
        Symbol::Alpha5,
        Symbol::Mu,
        Symbol::E,
        Symbol::A,
        Symbol::M0,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Alpha1 => "alpha1",
            Symbol::Alpha2 => "alpha2",
            Symbol::Alpha3 => "alpha3",
            Symbol::Alpha4 => "alpha4",
            Symbol::Alpha5 => "alpha5",
            Symbol::Mu => "mu",
            Symbol::E => "E",
            Symbol::A => "a",
            Symbol::M0 => "m0",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
