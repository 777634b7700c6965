use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::geom::vector::RationalVector;
use crate::rational::{self, Rational};

/// One atom: mass `weight * |normal|` at the direction `normal / |normal|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub normal: RationalVector,
    pub weight: Rational,
}

/// A finitely supported measure on the sphere with rational surrogate weights.
///
/// Normals are stored as primitive integer vectors, so two atoms share a
/// direction exactly when their normals are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectionalMeasure {
    atoms: Vec<Atom>,
}

impl DirectionalMeasure {
    /// Builds a measure, merging parallel normals and dropping zero weights.
    ///
    /// A normal given at a non-primitive scale `c * p` has its weight
    /// multiplied by `c`, which keeps the true mass unchanged.
    pub fn new(atoms: impl IntoIterator<Item = (RationalVector, Rational)>) -> Self {
        let mut merged: BTreeMap<RationalVector, Rational> = BTreeMap::new();
        for (normal, weight) in atoms {
            let p = normal.primitive();
            let k = p.first_nonzero().expect("nonzero normal");
            let factor = &normal.coords()[k] / &p.coords()[k];
            *merged.entry(p).or_insert_with(Rational::zero) += weight * factor;
        }
        DirectionalMeasure {
            atoms: merged
                .into_iter()
                .filter(|(_, w)| !w.is_zero())
                .map(|(normal, weight)| Atom { normal, weight })
                .collect(),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn normals(&self) -> Vec<&RationalVector> {
        self.atoms.iter().map(|a| &a.normal).collect()
    }

    pub fn weight(&self, normal: &RationalVector) -> Option<&Rational> {
        let p = normal.primitive();
        self.atoms
            .binary_search_by(|a| a.normal.cmp(&p))
            .ok()
            .map(|i| &self.atoms[i].weight)
    }

    /// `sum_u f(w_u) * weight_u`; for a support function this is the integral of `h`.
    pub fn integrate(&self, f: impl Fn(&RationalVector) -> Rational) -> Rational {
        self.atoms.iter().map(|a| f(&a.normal) * &a.weight).sum()
    }

    /// `sum_u weight_u * w_u`, the zero vector for every surface area measure.
    pub fn barycenter(&self) -> Vec<Rational> {
        let dim = self.atoms.first().map_or(0, |a| a.normal.dim());
        let mut acc = vec![Rational::zero(); dim];
        for a in &self.atoms {
            for (s, x) in acc.iter_mut().zip(a.normal.coords()) {
                *s += x * &a.weight;
            }
        }
        acc
    }
}

impl fmt::Display for DirectionalMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.atoms {
            writeln!(f, "{} -> {}", a.normal, rational::format(&a.weight))?;
        }
        Ok(())
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Atom", 2)?;
        st.serialize_field("normal", &self.normal)?;
        st.serialize_field("weight", &rational::format(&self.weight))?;
        st.end()
    }
}

impl Serialize for DirectionalMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.atoms.serialize(s)
    }
}
