//! Root-system data: simple roots, coroot pairings, and reflections.
//!
//! Only what the rest of the toolkit needs is modelled: a rank, an index set
//! for the simple roots, the simple roots themselves, and one integer row
//! vector per index so that `⟨λ, α_i^∨⟩ = row_i · λ`. Types A and C are
//! built in; any other Cartan datum can be supplied as an explicit table.
//! Everything is exact integer arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact;

/// An element of the weight lattice `Λ = Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Weight(vec![0; dim])
    }

    /// The standard basis vector `e_k` (1-based `k`).
    pub fn unit(dim: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= dim, "unit vector index out of range");
        let mut coords = vec![0; dim];
        coords[k - 1] = 1;
        Weight(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.dim(), other.dim());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.dim(), other.dim());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| c * a).collect())
    }

    pub fn dot(&self, other: &Weight) -> i64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add_assign(&mut self, other: &Weight) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Which family a root system belongs to.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Kind {
    TypeA,
    TypeC,
    Generic,
}

/// A root system fixed together with its simple roots and coroot pairings.
///
/// Immutable after construction; cheap to clone and safe to share across
/// threads.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootSystem {
    kind: Kind,
    rank: usize,
    index_set: Vec<usize>,
    simple_roots: Vec<Weight>,
    pairing_rows: Vec<Vec<i64>>,
}

impl RootSystem {
    /// Type `A_n`: `I = {1, …, n−1}`, `α_i = e_i − e_{i+1}`.
    pub fn type_a(n: usize) -> Result<RootSystem> {
        if n < 2 {
            return Err(Error::domain(format!("type A requires rank >= 2, got {n}")));
        }
        let index_set: Vec<usize> = (1..n).collect();
        let simple_roots: Vec<Weight> = index_set
            .iter()
            .map(|&i| Weight::unit(n, i).sub(&Weight::unit(n, i + 1)))
            .collect();
        // ⟨α_i, α_i⟩ = 2, so α_i^∨ = α_i and the pairing row equals the root.
        let pairing_rows = simple_roots.iter().map(|r| r.coords().to_vec()).collect();
        Ok(RootSystem {
            kind: Kind::TypeA,
            rank: n,
            index_set,
            simple_roots,
            pairing_rows,
        })
    }

    /// Type `C_n`: `I = {1, …, n}`, `α_i = e_i − e_{i+1}` for `i < n` and
    /// `α_n = 2e_n`.
    pub fn type_c(n: usize) -> Result<RootSystem> {
        if n < 1 {
            return Err(Error::domain("type C requires rank >= 1"));
        }
        let index_set: Vec<usize> = (1..=n).collect();
        let mut simple_roots = Vec::with_capacity(n);
        let mut pairing_rows = Vec::with_capacity(n);
        for i in 1..n {
            let root = Weight::unit(n, i).sub(&Weight::unit(n, i + 1));
            pairing_rows.push(root.coords().to_vec());
            simple_roots.push(root);
        }
        // ⟨α_n, α_n⟩ = 4, so α_n^∨ = α_n / 2 = e_n and ⟨λ, α_n^∨⟩ = λ_n.
        simple_roots.push(Weight::unit(n, n).scaled(2));
        pairing_rows.push(Weight::unit(n, n).coords().to_vec());
        Ok(RootSystem {
            kind: Kind::TypeC,
            rank: n,
            index_set,
            simple_roots,
            pairing_rows,
        })
    }

    /// A root system given by explicit tables. `simple_roots` and
    /// `pairing_rows` are aligned with `index_set`, and `pairing_rows[p] · λ`
    /// must equal `⟨λ, α_{i_p}^∨⟩`.
    pub fn generic(
        rank: usize,
        index_set: Vec<usize>,
        simple_roots: Vec<Weight>,
        pairing_rows: Vec<Vec<i64>>,
    ) -> Result<RootSystem> {
        if rank == 0 {
            return Err(Error::domain("rank must be positive"));
        }
        if index_set.is_empty() {
            return Err(Error::domain("index set must not be empty"));
        }
        let mut seen = index_set.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != index_set.len() {
            return Err(Error::domain("index set contains duplicates"));
        }
        if simple_roots.len() != index_set.len() || pairing_rows.len() != index_set.len() {
            return Err(Error::domain(
                "simple_roots and pairing_rows must cover the index set exactly",
            ));
        }
        for root in &simple_roots {
            if root.dim() != rank {
                return Err(Error::Shape {
                    expected: rank,
                    got: root.dim(),
                });
            }
        }
        for row in &pairing_rows {
            if row.len() != rank {
                return Err(Error::Shape {
                    expected: rank,
                    got: row.len(),
                });
            }
        }
        let rows: Vec<Vec<i64>> = simple_roots.iter().map(|r| r.coords().to_vec()).collect();
        if !exact::rows_independent(&rows) {
            return Err(Error::domain("simple roots are linearly dependent"));
        }
        // ⟨α_i, α_i^∨⟩ = 2 for every root; reject tables that break it.
        for (pos, root) in simple_roots.iter().enumerate() {
            let val: i64 = pairing_rows[pos]
                .iter()
                .zip(root.coords())
                .map(|(a, b)| a * b)
                .sum();
            if val != 2 {
                return Err(Error::domain(format!(
                    "pairing row for index {} gives <a_i, a_i^v> = {val}, expected 2",
                    index_set[pos]
                )));
            }
        }
        Ok(RootSystem {
            kind: Kind::Generic,
            rank,
            index_set,
            simple_roots,
            pairing_rows,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    /// Position of index `i` inside the index set.
    pub fn index_pos(&self, i: usize) -> Result<usize> {
        self.index_set
            .iter()
            .position(|&j| j == i)
            .ok_or_else(|| Error::UnknownIndex {
                index: i,
                index_set: self.index_set.clone(),
            })
    }

    pub fn simple_root(&self, i: usize) -> Result<&Weight> {
        Ok(&self.simple_roots[self.index_pos(i)?])
    }

    pub(crate) fn simple_root_at(&self, pos: usize) -> &Weight {
        &self.simple_roots[pos]
    }

    /// `⟨λ, α_i^∨⟩`, always an exact integer.
    pub fn coroot_pairing(&self, lambda: &Weight, i: usize) -> Result<i64> {
        let pos = self.index_pos(i)?;
        if lambda.dim() != self.rank {
            return Err(Error::Shape {
                expected: self.rank,
                got: lambda.dim(),
            });
        }
        Ok(self.pairing_at(pos, lambda))
    }

    /// Fast path for validated index positions.
    pub(crate) fn pairing_at(&self, pos: usize, lambda: &Weight) -> i64 {
        self.pairing_rows[pos]
            .iter()
            .zip(lambda.coords())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Reflection `r_α(v) = v − ⟨v, α^∨⟩ α` in the hyperplane orthogonal to
    /// `α`.
    ///
    /// For types A and C the coefficient is computed from the standard inner
    /// product on `R^n`; for generic systems only the tabulated simple roots
    /// are supported, via their pairing rows.
    pub fn reflection(&self, alpha: &Weight, v: &Weight) -> Result<Weight> {
        if alpha.dim() != self.rank || v.dim() != self.rank {
            return Err(Error::Shape {
                expected: self.rank,
                got: if alpha.dim() != self.rank {
                    alpha.dim()
                } else {
                    v.dim()
                },
            });
        }
        if alpha.is_zero() {
            return Err(Error::domain("reflection requires a nonzero vector"));
        }
        let coeff = match self.kind {
            Kind::TypeA | Kind::TypeC => {
                let den = alpha.dot(alpha);
                let num = 2 * v.dot(alpha);
                if num % den != 0 {
                    return Err(Error::domain(format!(
                        "<v, a^v> = {num}/{den} is not an integer; reflection leaves the lattice"
                    )));
                }
                num / den
            }
            Kind::Generic => {
                let pos = self
                    .simple_roots
                    .iter()
                    .position(|r| r == alpha)
                    .ok_or_else(|| {
                        Error::domain(
                            "generic systems support reflection only at tabulated simple roots",
                        )
                    })?;
                self.pairing_at(pos, v)
            }
        };
        Ok(v.sub(&alpha.scaled(coeff)))
    }

    /// Short identifier such as `A:3`, used in cache keys and reports.
    pub fn label(&self) -> String {
        match self.kind {
            Kind::TypeA => format!("A:{}", self.rank),
            Kind::TypeC => format!("C:{}", self.rank),
            Kind::Generic => format!("generic:{}", self.rank),
        }
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Serialize, Deserialize)]
enum BuiltinKind {
    A,
    C,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SysRepr {
    Builtin {
        kind: BuiltinKind,
        rank: usize,
    },
    Generic {
        rank: usize,
        index_set: Vec<usize>,
        simple_roots: BTreeMap<String, Vec<i64>>,
        pairing_rows: BTreeMap<String, Vec<i64>>,
    },
}

impl Serialize for RootSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self.kind {
            Kind::TypeA => SysRepr::Builtin {
                kind: BuiltinKind::A,
                rank: self.rank,
            },
            Kind::TypeC => SysRepr::Builtin {
                kind: BuiltinKind::C,
                rank: self.rank,
            },
            Kind::Generic => SysRepr::Generic {
                rank: self.rank,
                index_set: self.index_set.clone(),
                simple_roots: self
                    .index_set
                    .iter()
                    .zip(&self.simple_roots)
                    .map(|(i, r)| (i.to_string(), r.coords().to_vec()))
                    .collect(),
                pairing_rows: self
                    .index_set
                    .iter()
                    .zip(&self.pairing_rows)
                    .map(|(i, r)| (i.to_string(), r.clone()))
                    .collect(),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RootSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SysRepr::deserialize(deserializer)?;
        let sys = match repr {
            SysRepr::Builtin { kind, rank } => match kind {
                BuiltinKind::A => RootSystem::type_a(rank),
                BuiltinKind::C => RootSystem::type_c(rank),
            },
            SysRepr::Generic {
                rank,
                index_set,
                simple_roots,
                pairing_rows,
            } => {
                let mut roots = Vec::with_capacity(index_set.len());
                let mut rows = Vec::with_capacity(index_set.len());
                for &i in &index_set {
                    let key = i.to_string();
                    let root = simple_roots
                        .get(&key)
                        .ok_or_else(|| D::Error::custom(format!("missing simple root {i}")))?;
                    let row = pairing_rows
                        .get(&key)
                        .ok_or_else(|| D::Error::custom(format!("missing pairing row {i}")))?;
                    roots.push(Weight::new(root.clone()));
                    rows.push(row.clone());
                }
                RootSystem::generic(rank, index_set, roots, rows)
            }
        };
        sys.map_err(D::Error::custom)
    }
}
