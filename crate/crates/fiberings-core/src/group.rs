//! Finite groups as explicit multiplication tables.
//!
//! Orders stay tiny (the constructions label half-edges by group elements,
//! and valence bounds order), so everything is validated by exhaustive loops.

use crate::error::{Error, Result};

pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group on elements `0..order` with identity 0, given by its
/// multiplication table: `table[a][b] = a * b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::NotAGroup(format!(
                "order {n} exceeds the cap {MAX_GROUP_ORDER}"
            )));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::NotAGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::NotAGroup("entry outside the element range".into()));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::NotAGroup(format!(
                    "0 is not a two-sided identity at {a}"
                )));
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0) {
                return Err(Error::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { table })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup {
            table: vec![vec![0]],
        }
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1 && n <= MAX_GROUP_ORDER);
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup { table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == 0)
            .expect("validated group")
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}
