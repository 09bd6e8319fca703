//! Finitely generated abelian groups and homomorphisms between them in
//! normalized coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::hermite::{kernel_basis, Lattice};
use super::int::Int;
use super::matrix::IntMatrix;
use super::smith::{self, Track};
use crate::error::{Error, Result};

/// `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `2 ≤ d₁ | d₂ | … | d_k`.
///
/// Normalized coordinates list the torsion summands first, then the free ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct FgAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: vec![],
        }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_orders(&[Int::from(n)])
    }

    /// The group `⊕ Z/oᵢ` where an order of 0 means a copy of `Z`. Orders need
    /// not be normalized.
    pub fn from_orders(orders: &[Int]) -> Self {
        let diag = IntMatrix::from_triplets(
            orders.len(),
            orders.len(),
            &orders
                .iter()
                .enumerate()
                .map(|(i, o)| (i, i, o.clone()))
                .collect::<Vec<_>>(),
        )
        .expect("diagonal in range");
        Self::presented(orders.len(), &diag)
    }

    /// Cokernel of `relations : Z^k → Z^dim` (relations as columns).
    pub fn presented(dim: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows(), dim);
        let f = smith::invariant_factors(relations);
        let rank = f.len();
        FgAbGroup {
            free_rank: dim - rank,
            torsion: f.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of normalized coordinates.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of each normalized generator; 0 for free generators.
    pub fn orders(&self) -> Vec<Int> {
        let mut o = self.torsion.clone();
        o.extend(std::iter::repeat_n(Int::zero(), self.free_rank));
        o
    }

    /// Relation columns `oᵢ eᵢ` for the torsion generators.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Reduces a coordinate vector to its canonical representative.
    pub fn normalize(&self, v: &mut [Int]) {
        for (x, d) in v.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(d);
        }
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut o = self.orders();
        o.extend(other.orders());
        Self::from_orders(&o)
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(Int::one(), |a, b| &a * b))
    }

    pub fn tensor(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut o = Vec::new();
        for a in self.orders() {
            for b in other.orders() {
                o.push(a.gcd(&b));
            }
        }
        Self::from_orders(&o)
    }

    pub fn tor(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut o = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                o.push(a.gcd(b));
            }
        }
        Self::from_orders(&o)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for FgAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(FgAbGroup::trivial());
        }
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            let bad = || Error::Invalid(format!("cannot parse abelian group summand '{part}'"));
            if part == "Z" {
                orders.push(Int::zero());
            } else if let Some(r) = part.strip_prefix("Z^") {
                let r: usize = r.parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(Int::zero(), r));
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: Int = d.parse().map_err(|_| bad())?;
                if d.is_negative() || d.is_zero() {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(FgAbGroup::from_orders(&orders))
    }
}

/// A homomorphism between groups in normalized coordinates; column `j` is
/// the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianMap {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntMatrix,
}

impl AbelianMap {
    /// Builds and validates well-definedness (`ord(eⱼ)·f(eⱼ) = 0`). Entries
    /// are reduced to canonical representatives.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let mut m = matrix;
        let to = target.orders();
        for (j, oj) in source.orders().iter().enumerate() {
            for (i, oi) in to.iter().enumerate() {
                let ok = if oi.is_zero() {
                    oj.is_zero() || m[(i, j)].is_zero()
                } else {
                    (&m[(i, j)] * oj).is_divisible_by(oi)
                };
                if !ok {
                    return Err(Error::Verification(format!(
                        "map is not well defined on generator {j} (component {i})"
                    )));
                }
                if !oi.is_zero() {
                    m[(i, j)] = m[(i, j)].mod_floor(oi);
                }
            }
        }
        Ok(AbelianMap {
            source,
            target,
            matrix: m,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        AbelianMap {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        AbelianMap {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbelianMap) -> Result<AbelianMap> {
        if self.target != other.source {
            return Err(Error::Dimension(
                "composition of maps with mismatched groups".into(),
            ));
        }
        AbelianMap::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    /// All entries vanish modulo the target orders (guaranteed by normalization).
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel(&self) -> FgAbGroup {
        let (lat, rel) = self.kernel_lattice();
        let coords: Vec<Vec<Int>> = (0..rel.cols())
            .map(|j| {
                lat.coordinates(&rel.column(j))
                    .expect("relations lie in the kernel")
            })
            .collect();
        FgAbGroup::presented(lat.rank(), &IntMatrix::from_columns(lat.rank(), &coords))
    }

    pub fn cokernel(&self) -> FgAbGroup {
        let gens = self.matrix.hconcat(&self.target.relation_matrix());
        FgAbGroup::presented(self.target.ngens(), &gens)
    }

    pub fn image(&self) -> FgAbGroup {
        let lat = self.image_lattice();
        let rel = self.target.relation_matrix();
        let coords: Vec<Vec<Int>> = (0..rel.cols())
            .map(|j| {
                lat.coordinates(&rel.column(j))
                    .expect("relations lie in the image lattice")
            })
            .collect();
        FgAbGroup::presented(lat.rank(), &IntMatrix::from_columns(lat.rank(), &coords))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Invariant factors of the underlying integer matrix.
    pub fn smith_diagonal(&self) -> Vec<Int> {
        smith::invariant_factors(&self.matrix)
    }

    /// Preimage lattice of the target relations, together with the source
    /// relations as columns.
    fn kernel_lattice(&self) -> (Lattice, IntMatrix) {
        let k = self.source.ngens();
        let stacked = self.matrix.hconcat(&self.target.relation_matrix());
        let ker = kernel_basis(&stacked);
        let top: Vec<usize> = (0..k).collect();
        let lat = Lattice::from_columns(&ker.select_rows(&top));
        (lat, self.source.relation_matrix())
    }

    /// `f(Z^k) + relations` inside the target coordinates.
    fn image_lattice(&self) -> Lattice {
        Lattice::from_columns(&self.matrix.hconcat(&self.target.relation_matrix()))
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`, as subgroup equality `ker g = im f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessCheck {
    pub exact: bool,
    pub kernel: FgAbGroup,
    pub image: FgAbGroup,
}

pub fn check_exact(f: &AbelianMap, g: &AbelianMap) -> Result<ExactnessCheck> {
    if f.target != g.source {
        return Err(Error::Dimension("maps do not compose".into()));
    }
    let (ker_g, _) = g.kernel_lattice();
    let im_f = f.image_lattice();
    let kernel = g.kernel();
    let image = f.image();
    Ok(ExactnessCheck {
        exact: ker_g == im_f,
        kernel,
        image,
    })
}

/// `Z^dim / span(relations)`, reported with a tracked change of basis: row
/// `i` of `to_normal` sends old coordinates to normalized coordinate `i`,
/// column `i` of `from_normal` is a preimage of normalized generator `i`.
#[derive(Clone, Debug)]
pub struct NormalizedQuotient {
    pub group: FgAbGroup,
    pub to_normal: IntMatrix,
    pub from_normal: IntMatrix,
}

pub fn normalize_quotient(dim: usize, relations: &IntMatrix) -> NormalizedQuotient {
    assert_eq!(relations.rows(), dim);
    let d = smith::smith_decompose(
        relations,
        Track {
            p: true,
            p_inv: true,
            q: false,
            q_inv: false,
        },
    );
    let (p, p_inv) = (d.p.unwrap(), d.p_inv.unwrap());
    let r = d.diagonal.len();
    let keep: Vec<usize> = (0..dim)
        .filter(|&i| i >= r || !d.diagonal[i].is_one())
        .collect();
    let group = FgAbGroup {
        free_rank: dim - r,
        torsion: d.diagonal.iter().filter(|x| !x.is_one()).cloned().collect(),
    };
    NormalizedQuotient {
        group,
        to_normal: p.select_rows(&keep),
        from_normal: p_inv.select_columns(&keep),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn printing_and_parsing() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
        assert_eq!(FgAbGroup::free(3).to_string(), "Z^3");
        assert_eq!(g("Z/2 + Z/3").to_string(), "Z/6");
        assert_eq!(g("Z^2 + Z/2 + Z/4").to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(g("Z + Z").to_string(), "Z^2");
        assert!("Z/0".parse::<FgAbGroup>().is_err());
        assert!("Q".parse::<FgAbGroup>().is_err());
    }

    #[test]
    fn tensor_and_tor_of_cyclics() {
        assert_eq!(g("Z/4").tensor(&g("Z/6")), g("Z/2"));
        assert_eq!(g("Z/4").tor(&g("Z/6")), g("Z/2"));
        assert_eq!(g("Z").tensor(&g("Z/3")), g("Z/3"));
        assert_eq!(g("Z").tor(&g("Z/3")), g("0"));
    }

    #[test]
    fn kernel_cokernel_of_doubling() {
        // Z/4 --2--> Z/4
        let z4 = g("Z/4");
        let f =
            AbelianMap::new(z4.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2i64]])).unwrap();
        assert_eq!(f.kernel(), g("Z/2"));
        assert_eq!(f.cokernel(), g("Z/2"));
        assert_eq!(f.image(), g("Z/2"));
        assert!(!f.is_iso());
        // Z/2 --2--> Z/4 is the inclusion
        let i = AbelianMap::new(g("Z/2"), z4.clone(), IntMatrix::from_rows(&[vec![2i64]])).unwrap();
        assert!(i.is_injective());
        let e = check_exact(&i, &f).unwrap();
        assert!(e.exact);
        // not well defined: Z/2 --1--> Z/4
        assert!(AbelianMap::new(g("Z/2"), z4, IntMatrix::from_rows(&[vec![1i64]])).is_err());
    }

    #[test]
    fn normalized_quotient_tracks_generators() {
        let rel = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 3], vec![0, 0]]);
        let q = normalize_quotient(3, &rel);
        assert_eq!(q.group, g("Z + Z/6"));
        assert_eq!(q.to_normal.mul(&q.from_normal), IntMatrix::identity(2));
    }
}
