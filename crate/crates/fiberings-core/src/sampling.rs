//! Deterministic samplers for property suites: valid covering maps and
//! valid labeled graphs drawn from seeded pseudo-random streams, so test
//! runs are reproducible byte for byte.

use crate::construction::{Color, Edge, LabeledGraph};
use crate::covers::CoveringMap;
use crate::group::FiniteGroup;
use crate::perm::Perm;

/// xorshift64*: tiny, seedable, good enough for sampling test cases.
#[derive(Clone, Debug)]
pub struct SplitStream {
    state: u64,
}

impl SplitStream {
    pub fn new(seed: u64) -> SplitStream {
        SplitStream {
            state: seed.wrapping_mul(2685821657736338717).max(1),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(2685821657736338717)
    }

    /// Uniform-ish value in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            xs.swap(i, self.below(i + 1));
        }
    }

    pub fn permutation(&mut self, n: usize) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        self.shuffle(&mut images);
        Perm::new(images).expect("shuffle keeps bijectivity")
    }
}

/// A valid covering map of degree `d` over genus `h`, drawn from the family
/// where each generator pair `(a_i, b_i)` maps to a commuting pair (a random
/// permutation and one of its powers), which satisfies the surface relation
/// for free. Resamples until the result is transitive; mixes regular and
/// irregular covers.
pub fn sample_cover(h: usize, d: usize, seed: u64) -> CoveringMap {
    assert!(h >= 2 && d >= 1);
    let mut rng = SplitStream::new(seed ^ 0x9e3779b97f4a7c15);
    loop {
        let mut perms = Vec::with_capacity(2 * h);
        for _ in 0..h {
            let p = rng.permutation(d);
            let mut q = Perm::identity(d);
            for _ in 0..rng.below(d.max(1)) {
                q = q.then(&p);
            }
            // Sometimes swap which slot gets the power, for variety.
            if rng.below(2) == 0 {
                perms.push(p);
                perms.push(q);
            } else {
                perms.push(q);
                perms.push(p);
            }
        }
        if let Ok(c) = CoveringMap::new(h, d, perms) {
            return c;
        }
    }
}

/// A valid connected bipartite labeled graph over the cyclic group of the
/// given order, with at most `max_vertices` vertices: a random spanning
/// tree plus a few extra edges wherever label capacity allows.
pub fn sample_graph(group: &FiniteGroup, max_vertices: usize, seed: u64) -> LabeledGraph {
    assert!(max_vertices >= 1);
    let mut rng = SplitStream::new(seed ^ 0x51afd02ed4d0a53);
    let n = 1 + rng.below(max_vertices);
    let mut colors = vec![Color::Plus; n];
    for (i, c) in colors.iter_mut().enumerate().skip(1) {
        *c = if i == 1 {
            Color::Minus
        } else if rng.below(2) == 0 {
            Color::Plus
        } else {
            Color::Minus
        };
    }
    let order = group.order();
    let mut used: Vec<Vec<bool>> = vec![vec![false; order]; n];
    let mut edges: Vec<Edge> = Vec::new();
    let push_edge = |rng: &mut SplitStream,
                     used: &mut Vec<Vec<bool>>,
                     edges: &mut Vec<Edge>,
                     a: usize,
                     b: usize,
                     colors: &[Color]|
     -> bool {
        let (p, m) = if colors[a] == Color::Plus {
            (a, b)
        } else {
            (b, a)
        };
        let free_p: Vec<usize> = (0..order).filter(|&l| !used[p][l]).collect();
        let free_m: Vec<usize> = (0..order).filter(|&l| !used[m][l]).collect();
        if free_p.is_empty() || free_m.is_empty() {
            return false;
        }
        let lp = free_p[rng.below(free_p.len())];
        let lm = free_m[rng.below(free_m.len())];
        used[p][lp] = true;
        used[m][lm] = true;
        edges.push(Edge {
            plus: p,
            minus: m,
            label_plus: lp,
            label_minus: lm,
        });
        true
    };
    // Spanning tree: attach each vertex to an earlier opposite-color vertex
    // with spare label capacity; stop growing when none is left.
    let mut kept = n;
    for v in 1..n {
        let candidates: Vec<usize> = (0..v)
            .filter(|&w| colors[w] != colors[v] && used[w].iter().filter(|&&u| u).count() < order)
            .collect();
        if candidates.is_empty() {
            kept = v;
            break;
        }
        let w = candidates[rng.below(candidates.len())];
        let ok = push_edge(&mut rng, &mut used, &mut edges, v, w, &colors);
        assert!(ok, "candidate was filtered for capacity");
    }
    let n = kept;
    colors.truncate(n);
    // Extra edges while capacity remains.
    let extra = rng.below(3);
    for _ in 0..extra {
        let v = rng.below(n);
        let candidates: Vec<usize> = (0..n).filter(|&w| colors[w] != colors[v]).collect();
        if candidates.is_empty() {
            continue;
        }
        let w = candidates[rng.below(candidates.len())];
        push_edge(&mut rng, &mut used, &mut edges, v, w, &colors);
    }
    LabeledGraph::new(colors, edges)
}
