//! Built-in groups, each generated from explicit permutations.
//!
//! Most entries are metacyclic groups `⟨a, b | aⁿ = 1, bᵏ = aˢ, bab⁻¹ = aʳ⟩`
//! realised by their left regular representation; the rest are permutation
//! groups given directly (symmetric group, Heisenberg group acting on 𝔽₃³,
//! elementary abelian groups) or direct products on disjoint points.

use crate::group::{permutation_closure, FiniteGroup, GroupError, Permutation, DEFAULT_CLOSURE_BOUND};

type Labeler = Box<dyn Fn(&Permutation) -> String + Send + Sync>;

/// Golden per-class data: sorted `(class size, m)` pairs. The sphere degree of
/// a class is `m − 2`. Every table here is re-derived by brute force in the
/// test suite rather than trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Golden {
    pub classes: &'static [(usize, usize)],
    /// How the table was obtained.
    pub oracle: &'static str,
}

const BRUTE_FORCE: &str = "brute force: all subsets of each class filtered for closure, orbits by full conjugation";

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub order: usize,
    pub expected: Option<Golden>,
    build: fn() -> (usize, Vec<Permutation>, Labeler),
}

impl CatalogEntry {
    /// Degree and generators of the defining permutation representation.
    pub fn generators(&self) -> (usize, Vec<Permutation>) {
        let (d, g, _) = (self.build)();
        (d, g)
    }

    pub fn group(&self) -> Result<FiniteGroup, GroupError> {
        let (degree, gens, label) = (self.build)();
        let (group, perms) = permutation_closure(degree, &gens, DEFAULT_CLOSURE_BOUND)?;
        let labels = perms.iter().map(label).collect();
        group.with_labels(labels)
    }
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry").field("name", &self.name).field("order", &self.order).finish()
    }
}

/// `⟨a, b | aⁿ = 1, bᵏ = aˢ, bab⁻¹ = aʳ⟩` on elements `aⁱbʲ`, stored as
/// `i + n·j`.
#[derive(Clone, Copy)]
struct Metacyclic {
    n: usize,
    k: usize,
    r: usize,
    s: usize,
}

impl Metacyclic {
    fn pow_r(&self, j: usize) -> usize {
        (0..j).fold(1, |acc, _| acc * self.r % self.n)
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let (i1, j1) = (x % self.n, x / self.n);
        let (i2, j2) = (y % self.n, y / self.n);
        let mut i = (i1 + self.pow_r(j1) * i2) % self.n;
        let mut j = j1 + j2;
        if j >= self.k {
            j -= self.k;
            i = (i + self.s) % self.n;
        }
        i + self.n * j
    }

    fn order(&self) -> usize {
        self.n * self.k
    }

    fn left_regular(&self, g: usize) -> Permutation {
        Permutation((0..self.order()).map(|x| self.mul(g, x) as u32).collect())
    }

    /// Generators `a` and `b` (just `a` when `k = 1`).
    fn generators(&self) -> Vec<Permutation> {
        let mut g = vec![self.left_regular(1 % self.order())];
        if self.k > 1 {
            g.push(self.left_regular(self.n));
        }
        g
    }
}

fn power(sym: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{e}"),
    }
}

fn word(a: &str, i: usize, b: &str, j: usize) -> String {
    let parts: Vec<String> = [power(a, i), power(b, j)].into_iter().filter(|p| !p.is_empty()).collect();
    if parts.is_empty() {
        "e".into()
    } else {
        parts.join(" ")
    }
}

/// Regular representation with elements labelled `aⁱ bʲ` using the given
/// letters; a permutation is identified by the image of the identity point.
fn metacyclic(
    n: usize,
    k: usize,
    r: usize,
    s: usize,
    a: &'static str,
    b: &'static str,
) -> (usize, Vec<Permutation>, Labeler) {
    let g = Metacyclic { n, k, r, s };
    debug_assert_eq!(g.pow_r(k), 1 % n, "r^k = 1 mod n");
    debug_assert_eq!(r * s % n, s % n, "r fixes s");
    let label: Labeler = Box::new(move |p: &Permutation| {
        let x = p.apply(0);
        word(a, x % n, b, x / n)
    });
    (g.order(), g.generators(), label)
}

fn cyclic(n: usize) -> (usize, Vec<Permutation>, Labeler) {
    metacyclic(n, 1, 1, 0, "a", "b")
}

fn dihedral(n: usize) -> (usize, Vec<Permutation>, Labeler) {
    metacyclic(n, 2, n - 1, 0, "s", "t")
}

fn quaternion8() -> (usize, Vec<Permutation>, Labeler) {
    let (d, g, _) = metacyclic(4, 2, 3, 2, "a", "b");
    // a = i, b = j, ab = k.
    const NAMES: [&str; 8] = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"];
    (d, g, Box::new(|p: &Permutation| NAMES[p.apply(0)].to_string()))
}

fn symmetric3() -> (usize, Vec<Permutation>, Labeler) {
    let gens = vec![
        Permutation::from_cycles(3, &[vec![0, 1, 2]]).expect("cycle"),
        Permutation::from_cycles(3, &[vec![0, 1]]).expect("cycle"),
    ];
    (3, gens, Box::new(|p: &Permutation| p.cycle_notation()))
}

/// Upper unitriangular 3×3 matrices over 𝔽ₚ acting on column vectors of 𝔽ₚ³,
/// point `v₁ + p·v₂ + p²·v₃`.
fn heisenberg(p: usize) -> (usize, Vec<Permutation>, Labeler) {
    let point = move |v: [usize; 3]| v[0] + p * v[1] + p * p * v[2];
    let act = |x: usize, y: usize, z: usize| {
        Permutation(
            (0..p * p * p)
                .map(|q| {
                    let v = [q % p, q / p % p, q / (p * p)];
                    let w = [(v[0] + x * v[1] + z * v[2]) % p, (v[1] + y * v[2]) % p, v[2]];
                    point(w) as u32
                })
                .collect(),
        )
    };
    let gens = vec![act(1, 0, 0), act(0, 1, 0)];
    // M e₂ = (x, 1, 0) and M e₃ = (z, y, 1).
    let label: Labeler = Box::new(move |q: &Permutation| {
        let c2 = q.apply(point([0, 1, 0]));
        let c3 = q.apply(point([0, 0, 1]));
        let (x, z, y) = (c2 % p, c3 % p, c3 / p % p);
        if (x, y, z) == (0, 0, 0) {
            "e".into()
        } else {
            format!("[{x},{y},{z}]")
        }
    });
    (p * p * p, gens, label)
}

fn elementary_abelian(p: usize, rank: usize) -> (usize, Vec<Permutation>, Labeler) {
    let degree = p * rank;
    let gens = (0..rank)
        .map(|i| Permutation::from_cycles(degree, &[(i * p..(i + 1) * p).collect()]).expect("cycle"))
        .collect();
    let label: Labeler = Box::new(move |q: &Permutation| {
        let digits: Vec<String> = (0..rank).map(|i| ((q.apply(i * p) - i * p) % p).to_string()).collect();
        digits.concat()
    });
    (degree, gens, label)
}

/// Direct product acting on the disjoint union of the two point sets.
fn product(
    left: (usize, Vec<Permutation>, Labeler),
    right: (usize, Vec<Permutation>, Labeler),
) -> (usize, Vec<Permutation>, Labeler) {
    let (d1, g1, l1) = left;
    let (d2, g2, l2) = right;
    let degree = d1 + d2;
    let embed_left = |p: &Permutation| Permutation(p.0.iter().copied().chain(d1 as u32..degree as u32).collect());
    let embed_right = |p: &Permutation| Permutation((0..d1 as u32).chain(p.0.iter().map(|&x| x + d1 as u32)).collect());
    let gens = g1.iter().map(embed_left).chain(g2.iter().map(embed_right)).collect();
    let label: Labeler = Box::new(move |p: &Permutation| {
        let a = Permutation(p.0[..d1].to_vec());
        let b = Permutation(p.0[d1..].iter().map(|&x| x - d1 as u32).collect());
        format!("({},{})", l1(&a), l2(&b))
    });
    (degree, gens, label)
}

const D4_GOLDEN: Golden = Golden { classes: &[(1, 1), (1, 1), (2, 2), (2, 2), (2, 2)], oracle: BRUTE_FORCE };
const D8_GOLDEN: Golden =
    Golden { classes: &[(1, 1), (1, 1), (2, 2), (2, 2), (2, 2), (4, 2), (4, 2)], oracle: BRUTE_FORCE };
const HEIS27_GOLDEN: Golden = Golden {
    classes: &[(1, 1), (1, 1), (1, 1), (3, 3), (3, 3), (3, 3), (3, 3), (3, 3), (3, 3), (3, 3), (3, 3)],
    oracle: BRUTE_FORCE,
};

pub static CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "C2", description: "cyclic group of order 2", order: 2, expected: None, build: || cyclic(2) },
    CatalogEntry { name: "C3", description: "cyclic group of order 3", order: 3, expected: None, build: || cyclic(3) },
    CatalogEntry { name: "C4", description: "cyclic group of order 4", order: 4, expected: None, build: || cyclic(4) },
    CatalogEntry { name: "C5", description: "cyclic group of order 5", order: 5, expected: None, build: || cyclic(5) },
    CatalogEntry { name: "C8", description: "cyclic group of order 8", order: 8, expected: None, build: || cyclic(8) },
    CatalogEntry { name: "C9", description: "cyclic group of order 9", order: 9, expected: None, build: || cyclic(9) },
    CatalogEntry {
        name: "C16",
        description: "cyclic group of order 16",
        order: 16,
        expected: None,
        build: || cyclic(16),
    },
    CatalogEntry {
        name: "C25",
        description: "cyclic group of order 25",
        order: 25,
        expected: None,
        build: || cyclic(25),
    },
    CatalogEntry {
        name: "C27",
        description: "cyclic group of order 27",
        order: 27,
        expected: None,
        build: || cyclic(27),
    },
    CatalogEntry {
        name: "C32",
        description: "cyclic group of order 32",
        order: 32,
        expected: None,
        build: || cyclic(32),
    },
    CatalogEntry {
        name: "C2xC4",
        description: "direct product C2 x C4",
        order: 8,
        expected: None,
        build: || product(cyclic(2), cyclic(4)),
    },
    CatalogEntry {
        name: "C3xC3",
        description: "elementary abelian group of order 9",
        order: 9,
        expected: None,
        build: || elementary_abelian(3, 2),
    },
    CatalogEntry {
        name: "E8",
        description: "elementary abelian group of order 8",
        order: 8,
        expected: None,
        build: || elementary_abelian(2, 3),
    },
    CatalogEntry {
        name: "D4",
        description: "dihedral group of order 8 (rotation s, reflection t)",
        order: 8,
        expected: Some(D4_GOLDEN),
        build: || dihedral(4),
    },
    CatalogEntry {
        name: "Q8",
        description: "quaternion group of order 8",
        order: 8,
        expected: Some(D4_GOLDEN),
        build: quaternion8,
    },
    CatalogEntry {
        name: "D8",
        description: "dihedral group of order 16 (rotation s, reflection t)",
        order: 16,
        expected: Some(D8_GOLDEN),
        build: || dihedral(8),
    },
    CatalogEntry {
        name: "Q16",
        description: "generalized quaternion group of order 16",
        order: 16,
        expected: None,
        build: || metacyclic(8, 2, 7, 4, "a", "b"),
    },
    CatalogEntry {
        name: "SD16",
        description: "semidihedral group of order 16",
        order: 16,
        expected: None,
        build: || metacyclic(8, 2, 3, 0, "a", "b"),
    },
    CatalogEntry {
        name: "M16",
        description: "modular group of order 16",
        order: 16,
        expected: None,
        build: || metacyclic(8, 2, 5, 0, "a", "b"),
    },
    CatalogEntry {
        name: "C4:C4",
        description: "semidirect product C4 : C4",
        order: 16,
        expected: None,
        build: || metacyclic(4, 4, 3, 0, "a", "b"),
    },
    CatalogEntry {
        name: "C2xD4",
        description: "direct product C2 x D4",
        order: 16,
        expected: None,
        build: || product(cyclic(2), dihedral(4)),
    },
    CatalogEntry {
        name: "C2xQ8",
        description: "direct product C2 x Q8",
        order: 16,
        expected: None,
        build: || product(cyclic(2), quaternion8()),
    },
    CatalogEntry {
        name: "D16",
        description: "dihedral group of order 32",
        order: 32,
        expected: None,
        build: || dihedral(16),
    },
    CatalogEntry {
        name: "Q32",
        description: "generalized quaternion group of order 32",
        order: 32,
        expected: None,
        build: || metacyclic(16, 2, 15, 8, "a", "b"),
    },
    CatalogEntry {
        name: "SD32",
        description: "semidihedral group of order 32",
        order: 32,
        expected: None,
        build: || metacyclic(16, 2, 7, 0, "a", "b"),
    },
    CatalogEntry {
        name: "Heis27",
        description: "Heisenberg group of unitriangular 3x3 matrices over F3",
        order: 27,
        expected: Some(HEIS27_GOLDEN),
        build: || heisenberg(3),
    },
    CatalogEntry {
        name: "Heis125",
        description: "Heisenberg group of unitriangular 3x3 matrices over F5",
        order: 125,
        expected: None,
        build: || heisenberg(5),
    },
    CatalogEntry {
        name: "Heis343",
        description: "Heisenberg group of unitriangular 3x3 matrices over F7",
        order: 343,
        expected: None,
        build: || heisenberg(7),
    },
    CatalogEntry {
        name: "M27",
        description: "extraspecial group of order 27 and exponent 9",
        order: 27,
        expected: None,
        build: || metacyclic(9, 3, 4, 0, "a", "b"),
    },
    CatalogEntry {
        name: "S3",
        description: "symmetric group on 3 letters (not a p-group)",
        order: 6,
        expected: None,
        build: symmetric3,
    },
    CatalogEntry {
        name: "D6",
        description: "dihedral group of order 12 (not nilpotent)",
        order: 12,
        expected: None,
        build: || dihedral(6),
    },
    CatalogEntry {
        name: "C6",
        description: "cyclic group of order 6 (nilpotent, not a p-group)",
        order: 6,
        expected: None,
        build: || cyclic(6),
    },
    CatalogEntry {
        name: "C3xD4",
        description: "direct product C3 x D4 (nilpotent, not a p-group)",
        order: 24,
        expected: None,
        build: || product(cyclic(3), dihedral(4)),
    },
];

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}
