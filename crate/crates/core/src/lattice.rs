//! Integral lattices given by Gram matrices, the standard building blocks and
//! exact signatures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Matrix;
use crate::forms::{symmetric_signature, Signature};
use crate::intlin::{self, z_to_cyc, zmatrix, ZMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardLattice {
    U,
    A2,
    #[serde(rename = "E8_minus")]
    E8Minus,
    K3,
    #[serde(rename = "elliptic_H1")]
    EllipticH1,
}

impl std::str::FromStr for StandardLattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" => Ok(StandardLattice::U),
            "A2" => Ok(StandardLattice::A2),
            "E8_minus" => Ok(StandardLattice::E8Minus),
            "K3" => Ok(StandardLattice::K3),
            "elliptic_H1" => Ok(StandardLattice::EllipticH1),
            other => Err(Error::Parse(format!("unknown standard lattice '{other}'"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    gram: ZMatrix,
    alternating: bool,
}

/// Cartan matrix of E8 in Bourbaki numbering: the chain 1-3-4-5-6-7-8 with
/// node 2 attached to node 4.
pub fn e8_cartan() -> ZMatrix {
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let mut g = ZMatrix::scalar(8, &BigInt::from(2));
    for (a, b) in edges {
        g.set(a - 1, b - 1, BigInt::from(-1));
        g.set(b - 1, a - 1, BigInt::from(-1));
    }
    g
}

impl Lattice {
    pub fn new(gram: ZMatrix) -> Result<Lattice> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Lattice { gram, alternating: false })
    }

    pub fn new_alternating(gram: ZMatrix) -> Result<Lattice> {
        if !gram.is_antisymmetric() {
            return Err(Error::InvalidArgument("gram is not alternating".into()));
        }
        Ok(Lattice { gram, alternating: true })
    }

    pub fn zero() -> Lattice {
        Lattice { gram: Matrix::zeros(0, 0), alternating: false }
    }

    pub fn standard(name: StandardLattice) -> Lattice {
        match name {
            StandardLattice::U => Lattice::new(zmatrix(&[&[0, 1], &[1, 0]])).unwrap(),
            StandardLattice::A2 => Lattice::new(zmatrix(&[&[2, -1], &[-1, 2]])).unwrap(),
            StandardLattice::E8Minus => Lattice::new(e8_cartan().neg()).unwrap(),
            StandardLattice::K3 => {
                let u = Lattice::standard(StandardLattice::U);
                let e = Lattice::standard(StandardLattice::E8Minus);
                u.direct_sum(&u).direct_sum(&u).direct_sum(&e).direct_sum(&e)
            }
            StandardLattice::EllipticH1 => {
                Lattice::new_alternating(zmatrix(&[&[0, 1], &[-1, 0]])).unwrap()
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &ZMatrix {
        &self.gram
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    /// Orthogonal direct sum. Mixing symmetric and alternating summands is
    /// allowed only when one side has rank 0.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let alternating = if self.rank() == 0 {
            other.alternating
        } else if other.rank() == 0 {
            self.alternating
        } else {
            assert_eq!(self.alternating, other.alternating, "cannot mix symmetric and alternating forms");
            self.alternating
        };
        Lattice { gram: Matrix::block_diag(&self.gram, &other.gram), alternating }
    }

    pub fn det(&self) -> BigInt {
        intlin::det(&self.gram)
    }

    pub fn signature(&self) -> Result<Signature> {
        if self.alternating {
            return Err(Error::AlternatingForm);
        }
        symmetric_signature(&z_to_cyc(&self.gram))
    }

    /// (even, unimodular).
    pub fn is_even_unimodular(&self) -> (bool, bool) {
        let even = (0..self.rank()).all(|i| self.gram.get(i, i).is_even());
        (even, self.det().abs().is_one())
    }

    /// Bilinear value uᵀ G v on integer vectors.
    pub fn pair(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        self.gram.bilinear(u, v)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    rank: usize,
    gram: Vec<Vec<i64>>,
    alternating: bool,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gram = self
            .gram
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("gram entry fits i64")).collect())
            .collect();
        LatticeRepr { rank: self.rank(), gram, alternating: self.alternating }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LatticeRepr::deserialize(d)?;
        let rows: Vec<Vec<BigInt>> =
            repr.gram.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        if rows.len() != repr.rank || rows.iter().any(|r| r.len() != repr.rank) {
            return Err(D::Error::custom("gram dimensions do not match rank"));
        }
        let gram = Matrix::from_rows(rows).map_err(D::Error::custom)?;
        let l = if repr.alternating { Lattice::new_alternating(gram) } else { Lattice::new(gram) };
        l.map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use StandardLattice::*;

    #[test]
    fn standard_invariants() {
        let u = Lattice::standard(U);
        assert_eq!(u.det(), BigInt::from(-1));
        assert_eq!(u.is_even_unimodular(), (true, true));
        assert_eq!(u.signature().unwrap(), Signature::new(1, 1, 0));

        let a2 = Lattice::standard(A2);
        assert_eq!(a2.is_even_unimodular(), (true, false));
        assert_eq!(a2.det(), BigInt::from(3));

        let e8 = Lattice::standard(E8Minus);
        assert_eq!(e8.rank(), 8);
        assert_eq!(e8.det(), BigInt::from(1));
        assert_eq!(e8.is_even_unimodular(), (true, true));
        assert_eq!(e8.signature().unwrap(), Signature::new(0, 8, 0));

        let k3 = Lattice::standard(K3);
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.signature().unwrap(), Signature::new(3, 19, 0));
        assert_eq!(k3.is_even_unimodular(), (true, true));
    }

    #[test]
    fn sums() {
        let u = Lattice::standard(U);
        let uu = u.direct_sum(&u);
        assert_eq!(uu.rank(), 4);
        assert_eq!(uu.signature().unwrap(), Signature::new(2, 2, 0));
        assert_eq!(u.direct_sum(&Lattice::zero()), u);
        let e = Lattice::standard(E8Minus);
        let manual = uu.direct_sum(&u).direct_sum(&e).direct_sum(&e);
        assert_eq!(manual, Lattice::standard(K3));
    }

    #[test]
    fn alternating_is_rejected_by_signature() {
        let h = Lattice::standard(EllipticH1);
        assert!(h.is_alternating());
        assert_eq!(h.signature(), Err(Error::AlternatingForm));
    }

    #[test]
    fn json_roundtrip() {
        let a2 = Lattice::standard(A2);
        let s = serde_json::to_string(&a2).unwrap();
        assert_eq!(s, r#"{"rank":2,"gram":[[2,-1],[-1,2]],"alternating":false}"#);
        let back: Lattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a2);
        assert!(serde_json::from_str::<Lattice>(r#"{"rank":2,"gram":[[0,1],[2,0]],"alternating":false}"#).is_err());
    }
}
