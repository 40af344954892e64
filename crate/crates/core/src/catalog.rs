//! Built-in measurements with closed-form entries.
//!
//! Every matrix is assembled from exact expressions (`√3`, `√5`, roots of
//! unity) evaluated in double precision.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::weights;
use crate::error::{Error, Result};
use crate::linalg::{HermitianOperator, Matrix, C64};
use crate::measurements::{
    characterize_equiangular, characterize_symmetric, conical_design_params, from_symmetric,
    to_povms, EquiangularMeasurement, Povm, SymmetricMeasurementSet,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

fn herm(rows: &[&[C64]]) -> HermitianOperator {
    HermitianOperator::new(Matrix::from_rows(rows))
        .expect("closed-form catalog matrix is Hermitian")
}

/// Eigenvectors of σx, σy, σz, grouped by basis.
pub fn pauli_eigenvectors() -> Vec<Vec<Vec<C64>>> {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    vec![
        vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]],
        vec![vec![c(s, 0.0), c(0.0, s)], vec![c(s, 0.0), c(0.0, -s)]],
        vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ],
    ]
}

/// Six elements `|b⟩⟨b|/3` over the three Pauli eigenbases.
pub fn pauli_mub_design() -> EquiangularMeasurement {
    let groups = pauli_eigenvectors()
        .iter()
        .map(|basis| {
            basis
                .iter()
                .map(|v| HermitianOperator::projector(v).scale(1.0 / 3.0))
                .collect()
        })
        .collect();
    characterize_equiangular(groups).expect("Pauli MUB design is equiangular")
}

/// The two POVMs: the z basis and a three-outcome trine-like POVM.
pub fn two_povm_qubit_povms() -> Vec<Povm> {
    let s3 = sqrt(3.0);
    let first = vec![
        HermitianOperator::from_real_diagonal(&[1.0, 0.0]),
        HermitianOperator::from_real_diagonal(&[0.0, 1.0]),
    ];
    let second = vec![
        herm(&[&[c(1.0, 0.0), c(0.0, -1.0)], &[c(0.0, 1.0), c(1.0, 0.0)]]).scale(1.0 / 3.0),
        herm(&[&[c(2.0, 0.0), c(s3, 1.0)], &[c(s3, -1.0), c(2.0, 0.0)]]).scale(1.0 / 6.0),
        herm(&[&[c(2.0, 0.0), c(-s3, 1.0)], &[c(-s3, -1.0), c(2.0, 0.0)]]).scale(1.0 / 6.0),
    ];
    vec![Povm::new(first).unwrap(), Povm::new(second).unwrap()]
}

/// Five-outcome GEAM with weights `(2/5, 3/5)` on [`two_povm_qubit_povms`].
pub fn two_povm_qubit_geam() -> EquiangularMeasurement {
    let set = characterize_symmetric(two_povm_qubit_povms()).expect("two-POVM set is symmetric");
    from_symmetric(&[0.4, 0.6], &set).expect("weights are valid")
}

/// Five-outcome qubit GEAM that is a conical 2-design.
pub fn conical_qubit_geam() -> EquiangularMeasurement {
    let (s2, s3, s5) = (sqrt(2.0), sqrt(3.0), sqrt(5.0));
    let pre = (3.0 - s5) / 8.0;
    let q = -(c(2.0 + s3, 1.0) * sqrt(2.0 - s3));
    let i = c(0.0, 1.0);
    let g1 = vec![
        HermitianOperator::from_real_diagonal(&[s5 - s3, s5 + s3]).scale(pre),
        HermitianOperator::from_real_diagonal(&[s5 + s3, s5 - s3]).scale(pre),
    ];
    let g2 = vec![
        herm(&[&[c(2.0, 0.0), q], &[q.conj(), c(2.0, 0.0)]]).scale(pre),
        herm(&[&[c(2.0, 0.0), -i * q.conj()], &[i * q, c(2.0, 0.0)]]).scale(pre),
        herm(&[&[c(s2, 0.0), c(1.0, -1.0)], &[c(1.0, 1.0), c(s2, 0.0)]])
            .scale((3.0 - s5) / (4.0 * s2)),
    ];
    characterize_equiangular(vec![g1, g2]).expect("conical example is equiangular")
}

/// Trial-division primality test.
fn is_prime(d: usize) -> bool {
    d >= 2
        && (2..d)
            .take_while(|k| k * k <= d)
            .all(|k| !d.is_multiple_of(k))
}

/// Largest supported prime dimension.
pub const MAX_MUB_DIM: usize = 31;

/// `d + 1` mutually unbiased bases as unit vectors, for prime `d`.
///
/// Computational basis plus, for `a = 0..d`, the vectors
/// `|ψ_{a,b}⟩ = d^{-1/2} Σ_j ω^{a j² + b j} |j⟩` with `ω = e^{2πi/d}`;
/// for `d = 2` the quadratic phase is `i^{a j}`.
pub fn mub_vectors(d: usize) -> Result<Vec<Vec<Vec<C64>>>> {
    if !is_prime(d) || d > MAX_MUB_DIM {
        return Err(Error::NotPrime(d));
    }
    let norm = 1.0 / sqrt(d as f64);
    let phase = |num: f64, den: f64| {
        let t = 2.0 * core::f64::consts::PI * num / den;
        c(libm::cos(t) * norm, libm::sin(t) * norm)
    };
    let mut bases = Vec::with_capacity(d + 1);
    for a in 0..d {
        let basis = (0..d)
            .map(|b| {
                (0..d)
                    .map(|j| {
                        if d == 2 {
                            // i^{a j} (-1)^{b j}
                            phase((a * j) as f64 + 2.0 * (b * j) as f64, 4.0)
                        } else {
                            phase(((a * j * j + b * j) % d) as f64, d as f64)
                        }
                    })
                    .collect()
            })
            .collect();
        bases.push(basis);
    }
    bases.push(
        (0..d)
            .map(|k| {
                (0..d)
                    .map(|j| if j == k { c(1.0, 0.0) } else { c(0.0, 0.0) })
                    .collect()
            })
            .collect(),
    );
    Ok(bases)
}

/// Complete MUB set of rank-one projectors as a symmetric measurement set.
pub fn mub_bases(d: usize) -> Result<SymmetricMeasurementSet> {
    mums_from_mubs(d, 1.0)
}

/// `d + 1` mutually unbiased measurements with elements
/// `t P + (1 - t) I/d` over MUB projectors `P`; efficiency
/// `κ = t² + (1 - t²)/d`.
pub fn mums_from_mubs(d: usize, t: f64) -> Result<SymmetricMeasurementSet> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            what: "depolarization parameter",
            value: t,
        });
    }
    let bases = mub_vectors(d)?;
    let mixed = HermitianOperator::identity(d).scale((1.0 - t) / d as f64);
    let povms = bases
        .iter()
        .map(|basis| {
            Povm::new(
                basis
                    .iter()
                    .map(|v| HermitianOperator::projector(v).scale(t).add(&mixed))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    characterize_symmetric(povms)
}

/// Efficiency of [`mums_from_mubs`].
pub fn mum_efficiency(d: usize, t: f64) -> f64 {
    t * t + (1.0 - t * t) / d as f64
}

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogMeasurement {
    Equiangular(EquiangularMeasurement),
    Symmetric(SymmetricMeasurementSet),
}

impl CatalogMeasurement {
    pub fn dim(&self) -> usize {
        match self {
            CatalogMeasurement::Equiangular(m) => m.dim(),
            CatalogMeasurement::Symmetric(s) => s.dim(),
        }
    }

    /// The GEAM itself, or the uniform-weight GEAM `γ_μ = 1/M` built on a
    /// symmetric set.
    pub fn as_equiangular(&self) -> Result<EquiangularMeasurement> {
        match self {
            CatalogMeasurement::Equiangular(m) => Ok(m.clone()),
            CatalogMeasurement::Symmetric(s) => {
                let m = s.params().groups();
                from_symmetric(&vec![1.0 / m as f64; m], s)
            }
        }
    }

    pub fn as_symmetric(&self) -> Result<SymmetricMeasurementSet> {
        match self {
            CatalogMeasurement::Equiangular(m) => to_povms(m),
            CatalogMeasurement::Symmetric(s) => Ok(s.clone()),
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "kebab-case")
)]
pub enum Source {
    /// Published closed form.
    Published,
    /// Derived by hand from the construction.
    Derived,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedValue {
    pub name: String,
    pub value: f64,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub measurement: CatalogMeasurement,
    pub expected: Vec<ExpectedValue>,
}

fn ev(name: &str, value: f64, source: Source) -> ExpectedValue {
    ExpectedValue {
        name: name.to_string(),
        value,
        source,
    }
}

impl CatalogEntry {
    /// Named quantities measured from the stored operators, in the naming
    /// scheme of `expected` (`w1`, `x2`, `z12`, `omega1`, `Omega`, `gamma1`,
    /// `a1`, `b1`, `c1`, `trsq1`, `f`, `S`, `sigma`; indices are 1-based).
    pub fn measured(&self) -> Result<Vec<(String, f64)>> {
        let mut out = Vec::new();
        let set = self.measurement.as_symmetric()?;
        let p = set.params();
        for mu in 0..p.groups() {
            let k = mu + 1;
            out.push((format!("w{k}"), p.w[mu]));
            out.push((format!("x{k}"), p.x[mu]));
            if let Some(y) = p.y[mu] {
                out.push((format!("y{k}"), y));
            }
            for nu in (mu + 1)..p.groups() {
                if let Some(z) = p.z[mu][nu] {
                    out.push((format!("z{k}{}", nu + 1), z));
                }
            }
        }
        if let Ok(wts) = weights(p) {
            for (mu, w) in wts.omega.iter().enumerate() {
                out.push((format!("omega{}", mu + 1), *w));
            }
            out.push(("Omega".to_string(), wts.normalizer));
        }
        if let CatalogMeasurement::Equiangular(m) = &self.measurement {
            let q = m.params();
            for mu in 0..q.groups() {
                let k = mu + 1;
                out.push((format!("gamma{k}"), q.gamma[mu]));
                out.push((format!("a{k}"), q.a[mu]));
                out.push((format!("b{k}"), q.b[mu]));
                out.push((format!("trsq{k}"), q.b[mu] * q.a[mu] * q.a[mu]));
                if let Some(cm) = q.c[mu] {
                    out.push((format!("c{k}"), cm));
                    out.push((format!("intra{k}"), cm * q.a[mu] * q.a[mu]));
                }
            }
            out.push(("f".to_string(), q.f));
            if q.groups() > 1 {
                out.push(("inter12".to_string(), q.f * q.a[0] * q.a[1]));
            }
            if let Ok(cp) = conical_design_params(m) {
                out.push(("S".to_string(), cp.s));
                out.push(("sigma".to_string(), cp.sigma));
            }
        }
        Ok(out)
    }

    /// Largest `|measured - expected|`, or an error naming a missing quantity.
    pub fn max_expected_deviation(&self) -> Result<f64> {
        let measured = self.measured()?;
        let mut worst: f64 = 0.0;
        for e in &self.expected {
            let got = measured
                .iter()
                .find(|(n, _)| *n == e.name)
                .map(|(_, v)| *v)
                .ok_or(Error::Domain {
                    what: "catalog quantity missing",
                    value: e.value,
                })?;
            worst = worst.max((got - e.value).abs());
        }
        Ok(worst)
    }
}

/// Ids accepted by [`lookup`].
pub const CATALOG_IDS: [&str; 6] = [
    "pauli_mub",
    "two_povm",
    "conical",
    "mub_d3",
    "mum_d2",
    "mum_d3",
];

/// Depolarization used by the `mum_*` entries.
pub const CATALOG_MUM_T: f64 = 0.6;

pub fn lookup(id: &str) -> Option<CatalogEntry> {
    use Source::{Derived, Published};
    let s5 = sqrt(5.0);
    let entry = match id {
        "pauli_mub" => CatalogEntry {
            id: id.to_string(),
            description: "three Pauli eigenbases, elements |b><b|/3 (d=2, K=6, conical)"
                .to_string(),
            measurement: CatalogMeasurement::Equiangular(pauli_mub_design()),
            expected: vec![
                ev("gamma1", 1.0 / 3.0, Published),
                ev("gamma2", 1.0 / 3.0, Published),
                ev("gamma3", 1.0 / 3.0, Published),
                ev("omega1", 1.0 / 3.0, Published),
                ev("omega2", 1.0 / 3.0, Published),
                ev("omega3", 1.0 / 3.0, Published),
                ev("S", 1.0 / 9.0, Derived),
                ev("sigma", 1.0 / 3.0, Derived),
                ev("c1", 0.0, Derived),
                ev("f", 0.5, Derived),
            ],
        },
        "two_povm" => CatalogEntry {
            id: id.to_string(),
            description:
                "z basis and three-outcome POVM, weights (2/5, 3/5) (d=2, K=5, not conical)"
                    .to_string(),
            measurement: CatalogMeasurement::Equiangular(two_povm_qubit_geam()),
            expected: vec![
                ev("w1", 1.0, Published),
                ev("w2", 2.0 / 3.0, Published),
                ev("x1", 1.0, Published),
                ev("x2", 4.0 / 9.0, Published),
                ev("y1", 0.0, Published),
                ev("y2", 1.0 / 9.0, Published),
                ev("z12", 1.0 / 3.0, Published),
                ev("a1", 0.4, Published),
                ev("a2", 0.4, Published),
                ev("trsq1", 4.0 / 25.0, Published),
                ev("trsq2", 4.0 / 25.0, Published),
                ev("b1", 1.0, Published),
                ev("b2", 1.0, Published),
                ev("c1", 0.0, Published),
                ev("c2", 0.25, Published),
                ev("omega1", 0.25, Published),
                ev("omega2", 0.75, Published),
                ev("Omega", 4.0, Published),
                ev("f", 0.5, Derived),
            ],
        },
        "conical" => CatalogEntry {
            id: id.to_string(),
            description: "five-outcome conical 2-design (d=2, K=5)".to_string(),
            measurement: CatalogMeasurement::Equiangular(conical_qubit_geam()),
            expected: vec![
                ev("gamma1", (3.0 * s5 - 5.0) / 4.0, Published),
                ev("gamma2", 1.0 - (3.0 * s5 - 5.0) / 4.0, Published),
                ev("trsq1", (7.0 - 3.0 * s5) / 2.0, Published),
                ev("trsq2", (7.0 - 3.0 * s5) / 2.0, Published),
                ev("intra1", (7.0 - 3.0 * s5) / 8.0, Published),
                ev("intra2", (7.0 - 3.0 * s5) / 8.0, Published),
                ev("inter12", (7.0 * s5 - 15.0) / 8.0, Published),
                ev("S", (21.0 - 9.0 * s5) / 8.0, Published),
                ev("sigma", 11.0 * (3.0 - s5) * (3.0 - s5) / 16.0, Published),
                ev("f", 0.5, Derived),
            ],
        },
        "mub_d3" => CatalogEntry {
            id: id.to_string(),
            description: "four mutually unbiased bases in d=3".to_string(),
            measurement: CatalogMeasurement::Symmetric(mub_bases(3).ok()?),
            expected: mum_expectations(3, 1.0),
        },
        "mum_d2" | "mum_d3" => {
            let d = if id == "mum_d2" { 2 } else { 3 };
            CatalogEntry {
                id: id.to_string(),
                description: format!(
                    "{} depolarized MUBs, t = {CATALOG_MUM_T}, efficiency {:.4} (d={d})",
                    d + 1,
                    mum_efficiency(d, CATALOG_MUM_T)
                ),
                measurement: CatalogMeasurement::Symmetric(mums_from_mubs(d, CATALOG_MUM_T).ok()?),
                expected: mum_expectations(d, CATALOG_MUM_T),
            }
        }
        _ => return None,
    };
    Some(entry)
}

fn mum_expectations(d: usize, t: f64) -> Vec<ExpectedValue> {
    let kappa = mum_efficiency(d, t);
    let df = d as f64;
    let mut out = Vec::new();
    for mu in 1..=d + 1 {
        out.push(ev(&format!("w{mu}"), 1.0, Source::Published));
        out.push(ev(&format!("x{mu}"), kappa, Source::Published));
        out.push(ev(
            &format!("y{mu}"),
            (1.0 - kappa) / (df - 1.0),
            Source::Published,
        ));
        out.push(ev(
            &format!("omega{mu}"),
            1.0 / (df + 1.0),
            Source::Published,
        ));
    }
    out.push(ev("z12", 1.0 / df, Source::Published));
    out
}

/// All catalog entries in [`CATALOG_IDS`] order.
pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG_IDS.iter().filter_map(|id| lookup(id)).collect()
}
