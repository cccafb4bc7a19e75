#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use smcmod::algebra::Algebra;
use smcmod::field::FiniteField;
use smcmod::io;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn ring(name: &str) -> Arc<Algebra> {
    Arc::new(io::load_algebra(&fixture(name)).expect("fixture algebra loads"))
}

pub fn field(p: usize, e: usize) -> Arc<FiniteField> {
    Arc::new(FiniteField::new(p, e).expect("field"))
}

/// Multiplicative-group data of a finite field computed by listing every
/// product, independent of the field's own power and order routines.
pub struct UnitGroupOracle {
    pub units: Vec<usize>,
    pub squares: Vec<usize>,
    pub cubes: Vec<usize>,
    /// Orbits of `u -> w u` on the units, `w` a primitive cube root of unity,
    /// when one exists.
    pub omega_orbits: Option<Vec<Vec<usize>>>,
}

impl UnitGroupOracle {
    pub fn new(k: &FiniteField) -> Self {
        let units: Vec<usize> = (1..k.order()).collect();
        let mul = |a: usize, b: usize| k.mul(a as _, b as _) as usize;
        let mut squares: Vec<usize> = units.iter().map(|&u| mul(u, u)).collect();
        squares.sort();
        squares.dedup();
        let mut cubes: Vec<usize> = units.iter().map(|&u| mul(mul(u, u), u)).collect();
        cubes.sort();
        cubes.dedup();
        let omega = units.iter().copied().find(|&w| w != 1 && mul(mul(w, w), w) == 1);
        let omega_orbits = omega.map(|w| {
            let mut seen = vec![false; k.order()];
            let mut orbits = Vec::new();
            for &u in &units {
                if seen[u] {
                    continue;
                }
                let mut orbit = vec![];
                let mut v = u;
                while !seen[v] {
                    seen[v] = true;
                    orbit.push(v);
                    v = mul(v, w);
                }
                orbits.push(orbit);
            }
            orbits
        });
        UnitGroupOracle { units, squares, cubes, omega_orbits }
    }

    pub fn square_classes(&self) -> usize {
        self.units.len() / self.squares.len()
    }

    pub fn cube_classes(&self) -> usize {
        self.units.len() / self.cubes.len()
    }
}
