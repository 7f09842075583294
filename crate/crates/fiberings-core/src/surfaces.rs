//! Closed oriented surfaces, genus arithmetic, and free finite-group
//! actions carried as data with verified invariants.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::{standard_symplectic_form, IntMat};

/// A closed oriented surface, known by its genus alone.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClosedSurface {
    pub genus: usize,
}

impl ClosedSurface {
    pub fn new(genus: usize) -> ClosedSurface {
        ClosedSurface { genus }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    /// Rank of the first homology.
    pub fn h1_rank(&self) -> usize {
        2 * self.genus
    }
}

pub fn euler_characteristic(s: ClosedSurface) -> i64 {
    s.euler_characteristic()
}

/// Genus of the connected sum: genus is additive under `#`.
pub fn connected_sum_genus(genera: &[usize]) -> usize {
    assert!(!genera.is_empty(), "connected sum of nothing");
    genera.iter().sum()
}

/// Quotient genus of a free action of a group of order `n` on a surface of
/// genus `g`: solves `g - 1 = n (h - 1)` for `h` and demands `h >= 2`.
pub fn validate_free_action(n: usize, g: usize) -> Result<usize> {
    assert!(n >= 1, "group order must be positive");
    assert!(g >= 2, "total genus must be at least 2");
    if (g - 1) % n != 0 {
        return Err(Error::NonIntegralQuotient {
            order: n,
            genus_minus_one: g - 1,
        });
    }
    let h = (g - 1) / n + 1;
    if h < 2 {
        return Err(Error::QuotientGenusTooSmall { quotient: h });
    }
    Ok(h)
}

/// A free action of a finite group on a closed surface, stored as the
/// arithmetic data the constructions need. The optional `action_on_h1`
/// gives each element's action on `H_1` of the surface in the standard
/// interleaved symplectic basis; when present it is checked to be a
/// homomorphism into the symplectic group whose non-identity elements all
/// have trace 2 (a fixed-point-free map has Lefschetz number
/// `1 - tr + 1 = 0`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeActionData {
    group: FiniteGroup,
    surface: ClosedSurface,
    quotient_genus: usize,
    action_on_h1: Option<Vec<IntMat>>,
}

impl FreeActionData {
    pub fn new(group: FiniteGroup, total_genus: usize) -> Result<FreeActionData> {
        if total_genus < 2 {
            return Err(Error::GenusTooSmall { genus: total_genus });
        }
        let quotient_genus = validate_free_action(group.order(), total_genus)?;
        Ok(FreeActionData {
            group,
            surface: ClosedSurface::new(total_genus),
            quotient_genus,
            action_on_h1: None,
        })
    }

    pub fn with_action(
        group: FiniteGroup,
        total_genus: usize,
        matrices: Vec<IntMat>,
    ) -> Result<FreeActionData> {
        let mut data = FreeActionData::new(group, total_genus)?;
        data.set_action(matrices)?;
        Ok(data)
    }

    fn set_action(&mut self, matrices: Vec<IntMat>) -> Result<()> {
        let n = self.group.order();
        let dim = self.surface.h1_rank();
        if matrices.len() != n {
            return Err(Error::BadActionData(format!(
                "expected {n} matrices, one per group element, got {}",
                matrices.len()
            )));
        }
        let j = standard_symplectic_form(self.surface.genus);
        for (e, m) in matrices.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::BadActionData(format!(
                    "matrix for element {e} is not {dim}x{dim}"
                )));
            }
            if m.transpose().mul(&j).mul(m) != j {
                return Err(Error::BadActionData(format!(
                    "matrix for element {e} is not symplectic"
                )));
            }
            if e == 0 && !m.is_identity() {
                return Err(Error::BadActionData(
                    "identity element must act by the identity".into(),
                ));
            }
            if e != 0 && m.trace() != 2 {
                return Err(Error::BadActionData(format!(
                    "element {e} has trace {}, but a free map must have trace 2",
                    m.trace()
                )));
            }
        }
        for a in self.group.elements() {
            for b in self.group.elements() {
                // Homology actions compose contravariantly to path order:
                // matrices act on column vectors, so (ab) acts by M_a M_b
                // when a acts after b. Group action on points uses left
                // multiplication, hence M_{ab} = M_a * M_b.
                let ab = self.group.mul(a, b);
                if matrices[a].mul(&matrices[b]) != matrices[ab] {
                    return Err(Error::BadActionData(format!(
                        "not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        self.action_on_h1 = Some(matrices);
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn surface(&self) -> ClosedSurface {
        self.surface
    }

    pub fn total_genus(&self) -> usize {
        self.surface.genus
    }

    pub fn quotient_genus(&self) -> usize {
        self.quotient_genus
    }

    pub fn action_on_h1(&self) -> Option<&[IntMat]> {
        self.action_on_h1.as_deref()
    }

    /// Action matrix of a single element, if action data is present.
    pub fn action_of(&self, element: usize) -> Result<&IntMat> {
        self.action_on_h1
            .as_ref()
            .map(|m| &m[element])
            .ok_or(Error::MissingActionData { element })
    }

    /// Trivial group acting on a surface of genus `g`.
    pub fn trivial(g: usize) -> Result<FreeActionData> {
        let mut data = FreeActionData::new(FiniteGroup::trivial(), g)?;
        data.action_on_h1 = Some(vec![IntMat::identity(2 * g)]);
        Ok(data)
    }
}
