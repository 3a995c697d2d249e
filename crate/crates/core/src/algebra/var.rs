use std::fmt;

use crate::comb::KSubset;

use super::AlgebraError;

/// Identifier of a cluster variable or coefficient.
///
/// The derived order is the global variable order: every Plücker id sorts
/// before every anonymous id; Plücker ids follow [`KSubset`]'s order and
/// anonymous ids their ordinal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    Pluecker(KSubset),
    Anon(u32),
}

impl VarId {
    pub fn pluecker(n: usize, members: &[usize]) -> VarId {
        VarId::Pluecker(KSubset::new(n, members).expect("valid Plücker index"))
    }

    pub fn as_pluecker(&self) -> Option<KSubset> {
        match self {
            VarId::Pluecker(s) => Some(*s),
            VarId::Anon(_) => None,
        }
    }

    pub fn is_pluecker(&self) -> bool {
        matches!(self, VarId::Pluecker(_))
    }

    /// Parses `p[1,3,6]` or `a17`; `n` is the ambient size for Plücker ids.
    pub fn parse(s: &str, n: usize) -> Result<VarId, AlgebraError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('p') {
            KSubset::parse(rest, n)
                .map(VarId::Pluecker)
                .map_err(|e| AlgebraError::Parse(format!("{s}: {e}")))
        } else if let Some(rest) = s.strip_prefix('a') {
            rest.parse()
                .map(VarId::Anon)
                .map_err(|_| AlgebraError::Parse(s.to_string()))
        } else {
            Err(AlgebraError::Parse(s.to_string()))
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Pluecker(s) => write!(f, "p{s}"),
            VarId::Anon(i) => write!(f, "a{i}"),
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
