//! Test functions on a chart and their jets.

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::groups::ChartMap;
use crate::jet::Jet;
use crate::maassjacobi::bessel_k_jet;

/// A function of the chart coordinates that can be evaluated on jets.
pub trait ChartFunction: Send + Sync {
    fn jet(&self, coords: &[Jet]) -> Result<Jet>;

    fn value(&self, point: &[f64]) -> Result<C64> {
        Ok(self.jet(&Jet::coordinates(point, 0))?.value())
    }

    /// Jet of order `order` at `point`.
    fn jet_at(&self, point: &[f64], order: usize) -> Result<Jet> {
        self.jet(&Jet::coordinates(point, order))
    }
}

/// Closed family of test functions.
#[derive(Clone, Debug, PartialEq)]
pub enum TestFunction {
    /// `Σ c · Π coord_i^{e_i}`.
    Polynomial(Vec<(C64, Vec<u32>)>),
    /// `exp(Σ c_i coord_i)`.
    Exponential(Vec<C64>),
    /// `coord^s`, principal branch.
    Power {
        coord: usize,
        exponent: C64,
    },
    /// `K_ν(scale · coord)`.
    BesselK {
        coord: usize,
        nu: C64,
        scale: f64,
    },
    Product(Vec<TestFunction>),
    Sum(Vec<TestFunction>),
}

impl TestFunction {
    pub fn constant(c: C64) -> Self {
        TestFunction::Polynomial(vec![(c, vec![])])
    }

    /// `c · coord`.
    pub fn coord(idx: usize, c: C64) -> Self {
        let mut e = vec![0; idx + 1];
        e[idx] = 1;
        TestFunction::Polynomial(vec![(c, e)])
    }

    /// Rejects members outside the polynomial (degree ≤ 4) and bounded exponential family.
    pub fn check_closed_family(&self) -> Result<()> {
        match self {
            TestFunction::Polynomial(terms) => {
                for (_, e) in terms {
                    let d: u32 = e.iter().sum();
                    if d > 4 {
                        return Err(Error::Unsupported(format!("polynomial term of degree {d}")));
                    }
                }
                Ok(())
            }
            TestFunction::Exponential(c) => {
                if c.iter().any(|x| x.norm() > 1.0) {
                    return Err(Error::Unsupported("exponential rate above 1".into()));
                }
                Ok(())
            }
            TestFunction::Product(fs) | TestFunction::Sum(fs) => {
                fs.iter().try_for_each(|f| f.check_closed_family())
            }
            TestFunction::Power { .. } => Err(Error::Unsupported("power".into())),
            TestFunction::BesselK { .. } => Err(Error::Unsupported("Bessel K".into())),
        }
    }
}

fn check_coord(idx: usize, coords: &[Jet]) -> Result<()> {
    if idx >= coords.len() {
        return Err(Error::Shape(format!(
            "coordinate {idx} requested from a chart of dimension {}",
            coords.len()
        )));
    }
    Ok(())
}

impl ChartFunction for TestFunction {
    fn jet(&self, coords: &[Jet]) -> Result<Jet> {
        let zero = match coords.first() {
            Some(c) => c.lift(C64::new(0.0, 0.0)),
            None => return Err(Error::Shape("empty chart".into())),
        };
        match self {
            TestFunction::Polynomial(terms) => {
                let mut acc = zero;
                for (c, e) in terms {
                    let mut term = acc.lift(*c);
                    for (i, &k) in e.iter().enumerate() {
                        if k == 0 {
                            continue;
                        }
                        check_coord(i, coords)?;
                        for _ in 0..k {
                            term = &term * &coords[i];
                        }
                    }
                    acc += &term;
                }
                Ok(acc)
            }
            TestFunction::Exponential(c) => {
                if c.len() > coords.len() {
                    return Err(Error::Shape(
                        "more exponential rates than coordinates".into(),
                    ));
                }
                let mut s = zero;
                for (ci, x) in c.iter().zip(coords) {
                    s += &x.scale(*ci);
                }
                Ok(s.exp())
            }
            TestFunction::Power { coord, exponent } => {
                check_coord(*coord, coords)?;
                coords[*coord].powc(*exponent)
            }
            TestFunction::BesselK { coord, nu, scale } => {
                check_coord(*coord, coords)?;
                bessel_k_jet(*nu, &coords[*coord].scale(C64::new(*scale, 0.0)))
            }
            TestFunction::Product(fs) => {
                let mut acc = zero.lift(C64::new(1.0, 0.0));
                for f in fs {
                    acc = &acc * &f.jet(coords)?;
                }
                Ok(acc)
            }
            TestFunction::Sum(fs) => {
                let mut acc = zero;
                for f in fs {
                    acc += &f.jet(coords)?;
                }
                Ok(acc)
            }
        }
    }
}

/// Jet of a closed-family test function at `point`.
pub fn testfn_jet(f: &TestFunction, point: &[f64], order: usize) -> Result<Jet> {
    f.check_closed_family()?;
    f.jet_at(point, order)
}

/// `f ∘ φ` for a chart map `φ`.
pub struct Pullback<'a> {
    pub f: &'a dyn ChartFunction,
    pub map: &'a dyn ChartMap,
}

impl ChartFunction for Pullback<'_> {
    fn jet(&self, coords: &[Jet]) -> Result<Jet> {
        self.f.jet(&self.map.map_jets(coords)?)
    }
}

/// Random element of the closed family: a polynomial of degree at most 4 plus
/// a polynomial times an exponential with rates of modulus at most 1/2.
pub fn random_test_function<R: Rng + ?Sized>(chart: &RealChart, rng: &mut R) -> TestFunction {
    let dim = chart.dim();
    let mut poly = Vec::new();
    for deg in 0..=4u32 {
        let count = if deg == 0 { 1 } else { 3 };
        for _ in 0..count {
            let mut e = vec![0u32; dim];
            for _ in 0..deg {
                e[rng.random_range(0..dim)] += 1;
            }
            let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            poly.push((c, e));
        }
    }
    let rates: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.random_range(-0.35..0.35), rng.random_range(-0.35..0.35)))
        .collect();
    let mut lin = Vec::new();
    for _ in 0..2 {
        let mut e = vec![0u32; dim];
        e[rng.random_range(0..dim)] = 1;
        lin.push((
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            e,
        ));
    }
    lin.push((C64::new(1.0, 0.0), vec![]));
    TestFunction::Sum(vec![
        TestFunction::Polynomial(poly),
        TestFunction::Product(vec![
            TestFunction::Polynomial(lin),
            TestFunction::Exponential(rates),
        ]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_jet_coefficients() {
        // f = 2 x0^2 x1
        let f = TestFunction::Polynomial(vec![(C64::new(2.0, 0.0), vec![2, 1])]);
        let j = testfn_jet(&f, &[1.0, 3.0], 3).unwrap();
        assert!((j.value() - C64::new(6.0, 0.0)).norm() < 1e-14);
        assert!((j.derivative(&[1, 0]) - C64::new(12.0, 0.0)).norm() < 1e-14);
        assert!((j.derivative(&[2, 1]) - C64::new(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn unsupported_members_are_rejected() {
        let f = TestFunction::Power {
            coord: 0,
            exponent: C64::new(0.5, 0.0),
        };
        assert!(matches!(
            testfn_jet(&f, &[1.0], 2),
            Err(Error::Unsupported(_))
        ));
        let g = TestFunction::Polynomial(vec![(C64::new(1.0, 0.0), vec![5])]);
        assert!(matches!(
            testfn_jet(&g, &[1.0], 2),
            Err(Error::Unsupported(_))
        ));
    }
}
