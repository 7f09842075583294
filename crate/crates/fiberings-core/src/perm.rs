//! Permutations of `{0, .., n-1}` in one-line notation.

/// A permutation stored by its images: `p.apply(i) = images[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds from images, checking bijectivity.
    pub fn new(images: Vec<usize>) -> Option<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm { images })
    }

    /// The cycle `(0 1 ... n-1)`: each point maps to its successor mod n.
    pub fn full_cycle(n: usize) -> Perm {
        Perm {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// Builds from disjoint-cycle notation on `{0,..,n-1}`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for k in 0..cyc.len() {
                images[cyc[k]] = cyc[(k + 1) % cyc.len()];
            }
        }
        Perm::new(images).expect("cycles overlap or leave the domain")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// `self` followed by `next`: `(self.then(next))(i) = next(self(i))`.
    /// Matches path composition, so lifting a word `uv` is
    /// `sigma(u).then(sigma(v))`.
    pub fn then(&self, next: &Perm) -> Perm {
        assert_eq!(self.degree(), next.degree());
        Perm {
            images: self.images.iter().map(|&i| next.apply(i)).collect(),
        }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.then(other) == other.then(self)
    }

    /// Smallest k >= 1 with self^k = id.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Orbit of `start` under repeated application.
    pub fn orbit(&self, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut x = self.apply(start);
        while x != start {
            out.push(x);
            x = self.apply(x);
        }
        out
    }
}

/// Points of `{0,..,n-1}` unreachable from 0 under the group generated by
/// `gens`. Empty iff the generated group is transitive.
pub fn unreachable_from_zero(n: usize, gens: &[Perm]) -> Vec<usize> {
    let mut seen = vec![false; n];
    if n == 0 {
        return vec![];
    }
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for g in gens {
            for y in [g.apply(x), g.inverse().apply(x)] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    (0..n).filter(|&i| !seen[i]).collect()
}

/// All permutations commuting with every generator: the deck group of a
/// transitive permutation representation. A deck element is determined by
/// the image of sheet 0, so at most `n` candidates exist.
pub fn deck_group(n: usize, gens: &[Perm]) -> Vec<Perm> {
    // Walk the Schreier graph from 0; a candidate sending 0 to t propagates
    // uniquely along generators, and survives iff the propagation is
    // consistent and bijective.
    let mut out = Vec::new();
    'cand: for t in 0..n {
        let mut img = vec![usize::MAX; n];
        img[0] = t;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for g in gens {
                for (y, iy) in [
                    (g.apply(x), g.apply(img[x])),
                    (g.inverse().apply(x), g.inverse().apply(img[x])),
                ] {
                    if img[y] == usize::MAX {
                        img[y] = iy;
                        stack.push(y);
                    } else if img[y] != iy {
                        continue 'cand;
                    }
                }
            }
        }
        if img.iter().any(|&x| x == usize::MAX) {
            continue; // not transitive; caller should have checked
        }
        if let Some(p) = Perm::new(img) {
            if gens.iter().all(|g| p.commutes_with(g)) {
                out.push(p);
            }
        }
    }
    out
}
