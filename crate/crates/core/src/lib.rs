//! Exact equivariant quasisymmetric invariants of double posets and digraphs.
//!
//! The crate computes, for a finite permutation group acting on a double
//! poset or a directed graph, the quasisymmetric class function enumerating
//! fixed colorings, together with its principal specialization, and checks
//! reciprocity, effectiveness, flawlessness and orbit-counting identities on
//! concrete instances. Every value is exact: rationals, polynomials in the
//! ascent variable `t`, and cyclotomic numbers for character values.

pub mod compositions;
pub mod cyclotomic;
pub mod digraph;
pub mod dposet;
pub mod error;
pub mod groups;
pub mod qcf;
pub mod qsym;
pub mod random;
pub mod report;
pub mod ring;
pub mod verify;

pub use compositions::{GroundSet, IntComposition, SetComposition};
pub use cyclotomic::Cyc;
pub use digraph::Digraph;
pub use dposet::DoublePoset;
pub use error::{Error, Result};
pub use groups::{CharacterTable, ClassFunction, Perm, PermGroup, Permutation};
pub use qcf::{PolyClassFunction, QsymClassFunction};
pub use qsym::{Basis, PolyInBinomials, QSymExpr};
pub use report::VerdictReport;
pub use ring::{Poly, Rational, Ring};

/// Polynomials in `t` with rational coefficients.
pub type TPoly = Poly<Rational>;
/// Class-function values: polynomials in `t` over cyclotomic numbers.
pub type CycPoly = Poly<Cyc>;
/// Quasisymmetric expressions with rational coefficients.
pub type QSym = QSymExpr<Rational>;
/// Quasisymmetric expressions with `t`-polynomial coefficients.
pub type QSymT = QSymExpr<TPoly>;

/// Size bounds guarding the exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground set for double posets and digraphs.
    pub max_ground_set: usize,
    /// Largest permutation group that will be generated.
    pub max_group_order: usize,
    /// Largest ground set for explicit set-composition listings.
    pub max_composition_set: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ground_set: 9,
            max_group_order: 100_000,
            max_composition_set: 10,
        }
    }
}

impl Limits {
    /// Environment variable overriding [`Limits::max_ground_set`].
    pub const MAX_N_VAR: &'static str = "QCLASS_MAX_N";

    /// Defaults, with the ground-set bound taken from `QCLASS_MAX_N` when set.
    pub fn current() -> Self {
        let mut l = Limits::default();
        if let Some(n) = std::env::var(Self::MAX_N_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            // Bitmask enumeration caps the ground set at 31 elements.
            l.max_ground_set = n.min(31);
            l.max_composition_set = l.max_composition_set.max(l.max_ground_set);
        }
        l
    }

    pub(crate) fn check_ground_set(n: usize) -> Result<()> {
        let max = Self::current().max_ground_set;
        if n > max {
            return Err(Error::Resource(format!(
                "{n} elements exceeds the ground-set bound {max} (set {} to raise it)",
                Self::MAX_N_VAR
            )));
        }
        Ok(())
    }
}
