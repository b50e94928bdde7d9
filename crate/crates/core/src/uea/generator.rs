use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// The matrix unit `E_ij` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub i: u8,
    pub j: u8,
}

/// `E_ij`.
pub const fn e(i: u8, j: u8) -> Generator {
    Generator { i, j }
}

impl Generator {
    pub const fn new(i: u8, j: u8) -> Self {
        Generator { i, j }
    }

    /// 0 for strictly lower, 1 for diagonal, 2 for strictly upper.
    pub fn class(self) -> u8 {
        match self.i.cmp(&self.j) {
            Ordering::Greater => 0,
            Ordering::Equal => 1,
            Ordering::Less => 2,
        }
    }

    pub fn is_lower(self) -> bool {
        self.i > self.j
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }

    pub fn is_upper(self) -> bool {
        self.i < self.j
    }

    pub fn in_gl(self, n: u8) -> bool {
        (1..=n).contains(&self.i) && (1..=n).contains(&self.j)
    }

    pub fn in_mirabolic(self, n: u8) -> bool {
        self.in_gl(n) && self.j < n
    }

    /// `b = span{E_kl : k ≤ l ≤ N−1}`.
    pub fn in_borel(self, n: u8) -> bool {
        self.in_gl(n) && self.i <= self.j && self.j < n
    }

    /// Weight as a vector of length `n`: `ε_i − ε_j`.
    pub fn weight(self, n: u8) -> Vec<i64> {
        let mut w = vec![0; n as usize];
        w[self.i as usize - 1] += 1;
        w[self.j as usize - 1] -= 1;
        w
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.class(), self.i, self.j).cmp(&(other.class(), other.i, other.j))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}", self.i, self.j)
    }
}

/// Lie bracket `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
pub fn bracket(x: Generator, y: Generator) -> SmallVec<[(Generator, i64); 2]> {
    let mut out: SmallVec<[(Generator, i64); 2]> = SmallVec::new();
    if x.j == y.i {
        out.push((e(x.i, y.j), 1));
    }
    if y.j == x.i {
        let g = e(y.i, x.j);
        if let Some(t) = out.iter_mut().find(|t| t.0 == g) {
            t.1 -= 1;
        } else {
            out.push((g, -1));
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// Which algebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subalgebra {
    Gl,
    Mirabolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Algebra {
    pub n: u8,
    pub sub: Subalgebra,
}

impl Algebra {
    pub fn gl(n: u8) -> Self {
        Algebra { n, sub: Subalgebra::Gl }
    }

    pub fn mirabolic(n: u8) -> Self {
        Algebra { n, sub: Subalgebra::Mirabolic }
    }

    pub fn contains(self, g: Generator) -> bool {
        match self.sub {
            Subalgebra::Gl => g.in_gl(self.n),
            Subalgebra::Mirabolic => g.in_mirabolic(self.n),
        }
    }

    /// All generators in PBW order.
    pub fn generators(self) -> Vec<Generator> {
        let mut v: Vec<Generator> = (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| e(i, j)))
            .filter(|&g| self.contains(g))
            .collect();
        v.sort();
        v
    }

    /// Generators outside `n_−`, the ones that survive the Whittaker quotient.
    pub fn borel_side(self) -> Vec<Generator> {
        self.generators().into_iter().filter(|g| !g.is_lower()).collect()
    }
}
