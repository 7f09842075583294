//! Finite covers of closed surfaces as permutation representations, with
//! exact integer homology of the total space.
//!
//! The base surface of genus `h` carries its one-vertex CW structure: one
//! 0-cell, edges `a1, b1, ..., ah, bh`, and a single 2-cell attached along
//! `[a1,b1]...[ah,bh]`. A degree-`d` cover is the data of one permutation of
//! the `d` sheets per generator, subject to the surface relation and
//! transitivity. Lifting the cell structure gives boundary matrices small
//! enough that Smith normal form answers every homology question exactly.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::{self, IntMat};
use crate::perm::{self, Perm};
use crate::surfaces::FreeActionData;

/// A finite covering of the genus-`h` surface, encoded by the images of the
/// standard generators in the symmetric group on sheets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoveringMap {
    base_genus: usize,
    degree: usize,
    /// Images of `a1, b1, ..., ah, bh`, in that order (2h permutations).
    perm_images: Vec<Perm>,
}

impl CoveringMap {
    pub fn new(base_genus: usize, degree: usize, perm_images: Vec<Perm>) -> Result<CoveringMap> {
        if base_genus < 2 {
            return Err(Error::GenusTooSmall { genus: base_genus });
        }
        assert!(degree >= 1, "degree must be positive");
        assert_eq!(
            perm_images.len(),
            2 * base_genus,
            "need one permutation per generator"
        );
        assert!(
            perm_images.iter().all(|p| p.degree() == degree),
            "permutation degree mismatch"
        );
        let c = CoveringMap {
            base_genus,
            degree,
            perm_images,
        };
        c.validate()?;
        Ok(c)
    }

    /// Checks the surface relation and transitivity; returns the total genus
    /// `d(h-1) + 1` (Riemann-Hurwitz, unbranched).
    pub fn validate(&self) -> Result<usize> {
        let mut rel = Perm::identity(self.degree);
        for k in 0..self.base_genus {
            let a = &self.perm_images[2 * k];
            let b = &self.perm_images[2 * k + 1];
            rel = rel.then(a).then(b).then(&a.inverse()).then(&b.inverse());
        }
        if !rel.is_identity() {
            return Err(Error::RelationViolated);
        }
        let missing = perm::unreachable_from_zero(self.degree, &self.perm_images);
        if !missing.is_empty() {
            return Err(Error::NotTransitive(missing));
        }
        Ok(self.total_genus())
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm_images(&self) -> &[Perm] {
        &self.perm_images
    }

    pub fn total_genus(&self) -> usize {
        self.degree * (self.base_genus - 1) + 1
    }

    /// Covering permutation of a word in the base generators: the sheet
    /// `s` is carried to `sigma(word)(s)` when the word is lifted.
    pub fn word_permutation(&self, word: &[Letter]) -> Result<Perm> {
        let mut p = Perm::identity(self.degree);
        for l in word {
            if l.gen >= 2 * self.base_genus {
                return Err(Error::InvalidWord {
                    index: l.gen,
                    count: 2 * self.base_genus,
                });
            }
            let g = &self.perm_images[l.gen];
            p = if l.inverse {
                p.then(&g.inverse())
            } else {
                p.then(g)
            };
        }
        Ok(p)
    }

    /// All deck transformations, as permutations of sheets.
    pub fn deck_group(&self) -> Vec<Perm> {
        perm::deck_group(self.degree, &self.perm_images)
    }

    pub fn is_regular(&self) -> bool {
        self.deck_group().len() == self.degree
    }
}

/// One letter of a word in the standard generators of the base surface
/// group: generator index `0..2h` (order `a1, b1, ..., ah, bh`), possibly
/// inverted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Letter {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn inv(gen: usize) -> Letter {
        Letter { gen, inverse: true }
    }
}

/// The n-fold cyclic cover dual to `a1 -> 1 in Z/n`: the first generator
/// acts by the full cycle on sheets, every other generator acts trivially.
pub fn cyclic_cover(base_genus: usize, n: usize) -> CoveringMap {
    assert!(base_genus >= 2 && n >= 1);
    let mut perms = vec![Perm::identity(n); 2 * base_genus];
    perms[0] = Perm::full_cycle(n);
    CoveringMap::new(base_genus, n, perms).expect("cyclic covers always satisfy the relation")
}

/// Chain complex of the lifted CW structure: `d` vertices (the sheets),
/// `2h d` edges, `d` faces.
#[derive(Clone, Debug)]
pub struct CoverChainComplex {
    pub boundary1: IntMat,
    pub boundary2: IntMat,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

/// Index of the edge lifting generator `gen` at sheet `s`, running from `s`
/// to `sigma_gen(s)`. Lexicographic in (generator, sheet) keeps every basis
/// downstream reproducible.
fn edge_index(gen: usize, sheet: usize, degree: usize) -> usize {
    gen * degree + sheet
}

/// The relation word `[a1,b1]...[ah,bh]` as letters.
fn relation_word(h: usize) -> Vec<Letter> {
    let mut w = Vec::with_capacity(4 * h);
    for k in 0..h {
        w.push(Letter::new(2 * k));
        w.push(Letter::new(2 * k + 1));
        w.push(Letter::inv(2 * k));
        w.push(Letter::inv(2 * k + 1));
    }
    w
}

pub fn build_chain_complex(c: &CoveringMap) -> Result<CoverChainComplex> {
    c.validate()?;
    let d = c.degree();
    let h = c.base_genus();
    let n_edges = 2 * h * d;

    let mut boundary1 = IntMat::zeros(d, n_edges);
    for gen in 0..2 * h {
        for s in 0..d {
            let e = edge_index(gen, s, d);
            let t = c.perm_images()[gen].apply(s);
            boundary1[(t, e)] += 1;
            boundary1[(s, e)] -= 1;
        }
    }

    let mut boundary2 = IntMat::zeros(n_edges, d);
    let word = relation_word(h);
    for s in 0..d {
        let mut at = s;
        for l in &word {
            let sigma = &c.perm_images()[l.gen];
            if !l.inverse {
                boundary2[(edge_index(l.gen, at, d), s)] += 1;
                at = sigma.apply(at);
            } else {
                at = sigma.inverse().apply(at);
                boundary2[(edge_index(l.gen, at, d), s)] -= 1;
            }
        }
        debug_assert_eq!(at, s, "relation lift must close up");
    }

    let cc = CoverChainComplex {
        boundary1,
        boundary2,
        vertices: d,
        edges: n_edges,
        faces: d,
    };
    if !cc.boundary1.mul(&cc.boundary2).is_zero() {
        return Err(Error::EulerMismatch { lhs: 0, rhs: 1 }); // unreachable; chain identity is structural
    }
    Ok(cc)
}

/// Ordered basis of `H_1 = ker d1 / im d2` as integer vectors in 1-chain
/// coordinates. Errors with `TorsionFound` if the quotient is not free,
/// which would signal a bug for an orientable surface complex.
pub fn h1_basis(cc: &CoverChainComplex) -> Result<IntMat> {
    let kernel = matrix::kernel_basis(&cc.boundary1);
    let k = IntMat::from_columns(&kernel, cc.edges);
    // Express the image of d2 in kernel coordinates; the columns of d2 are
    // cycles, so the solve is exact.
    let im_in_kernel = matrix::solve(&k, &cc.boundary2).expect("d2 columns are cycles");
    let snf = matrix::smith(&im_in_kernel);
    let torsion: Vec<i64> = snf
        .invariant_factors()
        .into_iter()
        .filter(|&f| f != 1)
        .collect();
    if !torsion.is_empty() {
        return Err(Error::TorsionFound(torsion));
    }
    let r = snf.rank();
    let u_inv = matrix::inverse_unimodular(&snf.u);
    let quotient_cols: Vec<Vec<i64>> = (r..k.cols()).map(|j| u_inv.column(j)).collect();
    let quotient = IntMat::from_columns(&quotient_cols, k.cols());
    Ok(k.mul(&quotient))
}

/// Writes a cycle (1-chain in the kernel of d1) in the coordinates of a
/// given `h1_basis`, reducing modulo boundaries.
pub fn class_in_basis(cc: &CoverChainComplex, basis: &IntMat, cycle: &[i64]) -> Vec<i64> {
    let rank = basis.cols();
    let mut combined_cols: Vec<Vec<i64>> = (0..rank).map(|j| basis.column(j)).collect();
    for j in 0..cc.boundary2.cols() {
        combined_cols.push(cc.boundary2.column(j));
    }
    let combined = IntMat::from_columns(&combined_cols, cc.edges);
    let rhs = IntMat::from_columns(&[cycle.to_vec()], cc.edges);
    let sol = matrix::solve(&combined, &rhs).expect("input must be a cycle");
    (0..rank).map(|i| sol[(i, 0)]).collect()
}

// ---------------------------------------------------------------------------
// Intersection form from the rotation system.
// ---------------------------------------------------------------------------

/// Rotation system of the base vertex: the cyclic order of edge-ends around
/// the single 0-cell, read off the corners of the relation polygon. A dart
/// is `2*gen` for the source end of an edge and `2*gen + 1` for the target
/// end.
fn base_rotation(h: usize) -> Vec<usize> {
    let word = relation_word(h);
    let n = word.len();
    let dep = |l: &Letter| if l.inverse { 2 * l.gen + 1 } else { 2 * l.gen };
    let arr = |l: &Letter| if l.inverse { 2 * l.gen } else { 2 * l.gen + 1 };
    // Corner k joins the arrival end of word[k] to the departure end of
    // word[k+1]; following corners walks the vertex link.
    let mut next = vec![usize::MAX; 4 * h];
    for k in 0..n {
        next[arr(&word[k])] = dep(&word[(k + 1) % n]);
    }
    let mut order = Vec::with_capacity(4 * h);
    let mut d = 0;
    loop {
        order.push(d);
        d = next[d];
        if d == 0 {
            break;
        }
    }
    assert_eq!(
        order.len(),
        4 * h,
        "vertex link of the relation polygon must be a single circle"
    );
    order
}

/// Signed intersection number of two 1-cycles on the covering surface.
///
/// Both cycles pass through vertices; at each sheet the strands through each
/// edge-end are spread into separate slots (mirrored at the far end so
/// strands never cross inside an edge ribbon) and crossings of the resulting
/// chord diagrams are counted with signs. The sign convention is calibrated
/// so that the identity cover reproduces `<a_i, b_i> = +1`.
pub fn intersection_number(c: &CoveringMap, x: &[i64], y: &[i64]) -> i64 {
    let d = c.degree();
    let h = c.base_genus();
    assert_eq!(x.len(), 2 * h * d);
    assert_eq!(y.len(), 2 * h * d);
    let rotation = base_rotation(h);

    #[derive(Clone, Copy, PartialEq)]
    enum Owner {
        X,
        Y,
    }

    let mut total = 0i64;
    for sheet in 0..d {
        // Endpoint slots around this vertex, in rotation order. Each slot is
        // (owner, entering?).
        let mut slots: Vec<(Owner, bool)> = Vec::new();
        let mut x_in = Vec::new();
        let mut x_out = Vec::new();
        let mut y_in = Vec::new();
        let mut y_out = Vec::new();
        for &dart in &rotation {
            let gen = dart / 2;
            let target_end = dart % 2 == 1;
            // The lift of this dart at `sheet` belongs to edge (gen, s0):
            // source ends lift at their source sheet, target ends at the
            // sheet the edge arrives at.
            let s0 = if target_end {
                c.perm_images()[gen].inverse().apply(sheet)
            } else {
                sheet
            };
            let e = edge_index(gen, s0, d);
            let mut strand_list: Vec<(Owner, bool)> = Vec::new();
            for (owner, coeff) in [(Owner::X, x[e]), (Owner::Y, y[e])] {
                let positive = coeff > 0;
                // At the source end a positively traversed strand leaves the
                // vertex; at the target end it enters.
                let entering = positive == target_end;
                for _ in 0..coeff.unsigned_abs() {
                    strand_list.push((owner, entering));
                }
            }
            if target_end {
                strand_list.reverse();
            }
            for slot in strand_list {
                let pos = slots.len();
                match slot {
                    (Owner::X, true) => x_in.push(pos),
                    (Owner::X, false) => x_out.push(pos),
                    (Owner::Y, true) => y_in.push(pos),
                    (Owner::Y, false) => y_out.push(pos),
                }
                slots.push(slot);
            }
        }
        let circle = slots.len() as i64;
        if circle == 0 {
            continue;
        }
        debug_assert_eq!(
            x_in.len(),
            x_out.len(),
            "chain is not a cycle at sheet {sheet}"
        );
        debug_assert_eq!(
            y_in.len(),
            y_out.len(),
            "chain is not a cycle at sheet {sheet}"
        );
        // Any pairing of in- and out-strands gives the same total against
        // the other cycle, so pair by list order.
        for (&p1, &q1) in x_in.iter().zip(&x_out) {
            for (&p2, &q2) in y_in.iter().zip(&y_out) {
                let shift = |u: usize| ((u as i64 - p1 as i64) % circle + circle) % circle;
                let (sq1, sp2, sq2) = (shift(q1), shift(p2), shift(q2));
                if sq2 < sq1 && sq1 < sp2 {
                    total += 1;
                } else if sp2 < sq1 && sq1 < sq2 {
                    total -= 1;
                }
            }
        }
    }
    total
}

/// Intersection form on a basis of `H_1`, with basis vectors given in
/// 1-chain coordinates (the columns of an `h1_basis` output).
pub fn intersection_form(c: &CoveringMap, basis: &IntMat) -> IntMat {
    let n = basis.cols();
    let mut omega = IntMat::zeros(n, n);
    for i in 0..n {
        let bi = basis.column(i);
        for j in i + 1..n {
            let v = intersection_number(c, &bi, &basis.column(j));
            omega[(i, j)] = v;
            omega[(j, i)] = -v;
        }
    }
    omega
}

// ---------------------------------------------------------------------------
// Homology bundle: everything downstream consumers need, computed once.
// ---------------------------------------------------------------------------

/// Exact first homology of a covering surface: a deterministic cycle basis,
/// the intersection form on it, and a change of basis to standard
/// interleaved symplectic coordinates. The symplectic basis is seeded with
/// the lattice of cycles supported on `a`-edges: when those have full rank
/// (cyclic covers in particular) the even-index coordinate vectors span a
/// deck-invariant Lagrangian.
#[derive(Clone, Debug)]
pub struct CoverHomology {
    pub cover: CoveringMap,
    pub complex: CoverChainComplex,
    /// Columns: cycle representatives of the H1 basis, in 1-chain coords.
    pub basis: IntMat,
    /// Intersection form on `basis`.
    pub form: IntMat,
    /// Columns: a symplectic basis expressed in `basis` coordinates.
    pub sympl: IntMat,
    sympl_inv: IntMat,
}

impl CoverHomology {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Standard-coordinate expression of an H1-basis-coordinate vector.
    pub fn to_standard(&self, v: &[i64]) -> Vec<i64> {
        self.sympl_inv.mul_vec(v)
    }

    /// Conjugates a matrix acting in `basis` coordinates into standard
    /// symplectic coordinates.
    pub fn matrix_to_standard(&self, m: &IntMat) -> IntMat {
        self.sympl_inv.mul(m).mul(&self.sympl)
    }

    /// Pushforward of a standard-coordinate class to the base surface, in
    /// the base's own standard symplectic coordinates: sum the chain
    /// representative over sheets.
    pub fn transfer_to_base(&self, std_class: &[i64]) -> Vec<i64> {
        let h = self.cover.base_genus();
        let d = self.cover.degree();
        let in_h1 = self.sympl.mul_vec(std_class);
        let chain = self.basis.mul_vec(&in_h1);
        let mut base_edges = vec![0i64; 2 * h];
        for gen in 0..2 * h {
            for s in 0..d {
                base_edges[gen] += chain[edge_index(gen, s, d)];
            }
        }
        let base = base_homology(h);
        base.to_standard(&class_in_basis(&base.complex, &base.basis, &base_edges))
    }
}

/// Cycles supported on the `a`-generator edges, as H1-basis-coordinate
/// vectors spanning a saturated isotropic sublattice. Used to seed the
/// symplectic basis.
fn a_cycle_seeds(
    c: &CoveringMap,
    cc: &CoverChainComplex,
    basis: &IntMat,
    form: &IntMat,
) -> Vec<Vec<i64>> {
    let d = c.degree();
    let h = c.base_genus();
    // Boundary map restricted to a-edges (generator indices 0, 2, 4, ...).
    let a_edges: Vec<usize> = (0..h)
        .flat_map(|k| (0..d).map(move |s| edge_index(2 * k, s, d)))
        .collect();
    let restricted_cols: Vec<Vec<i64>> = a_edges.iter().map(|&e| cc.boundary1.column(e)).collect();
    let restricted = IntMat::from_columns(&restricted_cols, cc.vertices);
    let kernel = matrix::kernel_basis(&restricted);
    let classes: Vec<Vec<i64>> = kernel
        .iter()
        .map(|kvec| {
            let mut chain = vec![0i64; cc.edges];
            for (idx, &e) in a_edges.iter().enumerate() {
                chain[e] = kvec[idx];
            }
            class_in_basis(cc, basis, &chain)
        })
        .collect();
    if classes.is_empty() {
        return vec![];
    }
    // Saturate in H1 and keep only a genuinely isotropic system; fall back
    // to an unseeded basis if anything is off.
    let mat = IntMat::from_columns(&classes, basis.cols());
    let snf = matrix::smith(&mat);
    let r = snf.rank();
    let u_inv = matrix::inverse_unimodular(&snf.u);
    let saturated: Vec<Vec<i64>> = (0..r).map(|j| u_inv.column(j)).collect();
    let g = basis.cols() / 2;
    let take = r.min(g);
    let seeds: Vec<Vec<i64>> = saturated.into_iter().take(take).collect();
    for (i, s) in seeds.iter().enumerate() {
        for t in seeds.iter().skip(i) {
            let pairing: i64 = (0..s.len())
                .map(|p| {
                    (0..s.len())
                        .map(|q| s[p] * form[(p, q)] * t[q])
                        .sum::<i64>()
                })
                .sum();
            if pairing != 0 {
                return vec![];
            }
        }
    }
    seeds
}

/// Computes the full homology package for a covering.
pub fn homology(c: &CoveringMap) -> Result<CoverHomology> {
    let complex = build_chain_complex(c)?;
    let basis = h1_basis(&complex)?;
    let expected = 2 * c.total_genus();
    if basis.cols() != expected {
        return Err(Error::EulerMismatch {
            lhs: basis.cols() as i64,
            rhs: expected as i64,
        });
    }
    let form = intersection_form(c, &basis);
    let seeds = a_cycle_seeds(c, &complex, &basis, &form);
    let sympl = matrix::symplectic_transform(&form, &seeds);
    let sympl_inv = matrix::inverse_unimodular(&sympl);
    Ok(CoverHomology {
        cover: c.clone(),
        complex,
        basis,
        form,
        sympl,
        sympl_inv,
    })
}

fn base_homology(h: usize) -> CoverHomology {
    let base =
        CoveringMap::new(h, 1, vec![Perm::identity(1); 2 * h]).expect("identity cover is valid");
    homology(&base).expect("identity cover homology")
}

/// Matrix of the action of a deck transformation on `H_1`, expressed in the
/// `h1_basis` coordinates of the cover.
pub fn deck_action_h1(c: &CoveringMap, deck: &Perm) -> Result<IntMat> {
    let hom = homology(c)?;
    deck_action_in(&hom, deck)
}

/// Same, against a precomputed homology package.
pub fn deck_action_in(hom: &CoverHomology, deck: &Perm) -> Result<IntMat> {
    let c = &hom.cover;
    if deck.degree() != c.degree() || c.perm_images().iter().any(|g| !deck.commutes_with(g)) {
        return Err(Error::NotDeckTransformation);
    }
    let d = c.degree();
    let h = c.base_genus();
    let cols: Vec<Vec<i64>> = (0..hom.rank())
        .map(|j| {
            let chain = hom.basis.column(j);
            let mut moved = vec![0i64; chain.len()];
            for gen in 0..2 * h {
                for s in 0..d {
                    moved[edge_index(gen, deck.apply(s), d)] = chain[edge_index(gen, s, d)];
                }
            }
            class_in_basis(&hom.complex, &hom.basis, &moved)
        })
        .collect();
    Ok(IntMat::from_columns(&cols, hom.rank()))
}

/// Homology action data for the cyclic group `Z/n` acting freely on the
/// genus `n(h-1)+1` cover of a genus-`h` surface, realized by the deck
/// rotations of `cyclic_cover(h, n)` in standard symplectic coordinates.
pub fn cyclic_action_data(n: usize, quotient_genus: usize) -> Result<FreeActionData> {
    let cover = cyclic_cover(quotient_genus, n);
    let hom = homology(&cover)?;
    let rot = Perm::full_cycle(n);
    let mut mats = Vec::with_capacity(n);
    let mut tau = Perm::identity(n);
    for _ in 0..n {
        let raw = deck_action_in(&hom, &tau)?;
        mats.push(hom.matrix_to_standard(&raw));
        tau = tau.then(&rot);
    }
    FreeActionData::with_action(FiniteGroup::cyclic(n), cover.total_genus(), mats)
}
