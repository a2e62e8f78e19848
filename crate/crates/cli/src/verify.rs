//! End-to-end reproduction of the `SL₂(ℤ₃)` example: `C(G₁)`, `B`, `C(G₂)`,
//! `C(G₃)` and the closed form, checked against the published matrices.
//!
//! Computing and checking are separate so that tests can perturb the expected
//! side and watch the check fail.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use modrep::arith::Rationals;
use modrep::cde::ModularData;
use modrep::group::DEFAULT_CAP;
use modrep::linalg::{self, int_det, int_matpow, IntMatrix};
use modrep::tower::{build_tower, check_dimension_count, sl2_closed_form, tower_cartan};

use crate::commands::run_cached;
use crate::{json, Cache, CliError, ResultEnvelope};

/// The matrices printed for `SL₂(ℤ₃)` over `𝔽₉`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublishedMatrices {
    pub c1: IntMatrix,
    pub b: IntMatrix,
    pub c2: IntMatrix,
    pub c3: IntMatrix,
}

impl PublishedMatrices {
    pub fn published() -> Self {
        PublishedMatrices {
            c1: IntMatrix::diag(&[3, 1, 3]),
            b: IntMatrix::from_i64_rows(&[vec![9, 18, 0], vec![6, 21, 0], vec![0, 0, 27]]),
            c2: IntMatrix::from_i64_rows(&[vec![27, 18, 0], vec![18, 21, 0], vec![0, 0, 81]]),
            c3: IntMatrix::from_i64_rows(&[vec![567, 540, 0], vec![540, 549, 0], vec![0, 0, 2187]]),
        }
    }

    pub fn get_mut(&mut self, target: Target) -> &mut IntMatrix {
        match target {
            Target::C1 => &mut self.c1,
            Target::B => &mut self.b,
            Target::C2 => &mut self.c2,
            Target::C3 => &mut self.c3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    C1,
    B,
    C2,
    C3,
}

impl Target {
    pub const ALL: [Target; 4] = [Target::C1, Target::B, Target::C2, Target::C3];
}

/// `target,row,col,delta`: add `delta` to one entry of an expected matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Injection {
    pub target: Target,
    pub row: usize,
    pub col: usize,
    pub delta: i64,
}

impl FromStr for Injection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [target, row, col, delta] = parts.as_slice() else {
            return Err(format!("expected target,row,col,delta, got {s:?}"));
        };
        let target = match target.to_ascii_lowercase().as_str() {
            "c1" => Target::C1,
            "b" => Target::B,
            "c2" => Target::C2,
            "c3" => Target::C3,
            other => return Err(format!("unknown matrix {other:?}; use c1, b, c2 or c3")),
        };
        let num = |x: &str| x.parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
        let (row, col) = (num(row)?, num(col)?);
        if row < 0 || col < 0 {
            return Err("row and column are zero-based and non-negative".into());
        }
        Ok(Injection { target, row: row as usize, col: col as usize, delta: num(delta)? })
    }
}

impl Injection {
    pub fn apply(&self, m: &mut PublishedMatrices) -> Result<(), CliError> {
        let m = m.get_mut(self.target);
        if self.row >= m.rows() || self.col >= m.cols() {
            return Err(CliError::Input(format!("entry ({}, {}) is outside the matrix", self.row, self.col)));
        }
        let v = m.get(self.row, self.col) + BigInt::from(self.delta);
        m.set(self.row, self.col, v);
        Ok(())
    }
}

/// Everything the pipeline produces, indexed by our simples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computed {
    pub simple_dims: Vec<usize>,
    /// `DᵀD` for `SL₂(ℤ/3)`.
    pub c1: IntMatrix,
    /// From the conjugation character of the first congruence section.
    pub b: IntMatrix,
    /// `DᵀD` for `SL₂(ℤ/9)`, from its own character tables.
    pub c2_direct: IntMatrix,
    /// `C(G₂)·C(G₁)⁻¹`, absent when not integral.
    pub b_from_cartans: Option<IntMatrix>,
}

impl Computed {
    pub fn to_json(&self) -> Value {
        json!({
            "simple_dims": self.simple_dims,
            "c1": json::matrix(&self.c1),
            "b": json::matrix(&self.b),
            "c2_direct": json::matrix(&self.c2_direct),
            "b_from_cartans": self.b_from_cartans.as_ref().map(json::matrix),
        })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let simple_dims = v
            .get("simple_dims")?
            .as_array()?
            .iter()
            .map(|d| d.as_u64().map(|d| d as usize))
            .collect::<Option<Vec<_>>>()?;
        let n = simple_dims.len();
        let square = |m: IntMatrix| (m.rows() == n && m.cols() == n).then_some(m);
        let b_from_cartans = match v.get("b_from_cartans")? {
            Value::Null => None,
            m => Some(square(json::parse_matrix(m)?)?),
        };
        Some(Computed {
            c1: square(json::parse_matrix(v.get("c1")?)?)?,
            b: square(json::parse_matrix(v.get("b")?)?)?,
            c2_direct: square(json::parse_matrix(v.get("c2_direct")?)?)?,
            b_from_cartans,
            simple_dims,
        })
    }
}

pub fn compute(seed: u64) -> Result<Computed, CliError> {
    let t = build_tower(3, 2, DEFAULT_CAP).map_err(CliError::computation)?;
    let f9 = Arc::new(modrep::arith::make_field(3, 2, None).map_err(CliError::computation)?);
    let level = |n| t.level(n).map(Arc::clone).map_err(CliError::computation);
    let g1 = ModularData::compute(level(1)?, f9.clone(), seed).map_err(CliError::computation)?;
    let g2 = ModularData::compute(level(2)?, f9, seed).map_err(CliError::computation)?;
    let inflated = t.inflate_table(&g1.brauer, 2).map_err(CliError::computation)?;
    if inflated.fingerprints() != g2.brauer.fingerprints() {
        return Err(CliError::Computation("simples of the two levels are labelled differently".into()));
    }
    let b = t.b_matrix(1, &inflated).map_err(CliError::computation)?;
    let b_from_cartans = linalg::inverse(&Rationals, &g1.cartan.to_rational())
        .ok()
        .and_then(|inv| IntMatrix::try_from_rational(&g2.cartan.to_rational().mul(&Rationals, &inv)).ok());
    Ok(Computed { simple_dims: g1.brauer.dims(), c1: g1.cartan, b, c2_direct: g2.cartan, b_from_cartans })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    /// `perm[ours]` is the published index of our simple `ours`.
    pub permutation: Option<Vec<usize>>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        match &self.permutation {
            Some(p) => writeln!(out, "relabelling of simples (ours -> published): {p:?}").unwrap(),
            None => writeln!(out, "no relabelling of simples fits").unwrap(),
        }
        for c in &self.checks {
            let pad = width - c.name.chars().count();
            writeln!(out, "{}{}  {}", c.name, " ".repeat(pad), if c.passed { "PASS" } else { "FAIL" }).unwrap();
            for d in &c.details {
                writeln!(out, "    {d}").unwrap();
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "permutation": self.permutation,
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "details": c.details})).collect::<Vec<_>>(),
        })
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q: Vec<usize> = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn mismatches(a: &IntMatrix, b: &IntMatrix) -> usize {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return usize::MAX / 8;
    }
    a.data().iter().zip(b.data()).filter(|(x, y)| x != y).count()
}

fn compare(name: &str, computed: Option<&IntMatrix>, expected: &IntMatrix) -> Check {
    let mut details = Vec::new();
    match computed {
        None => details.push("no computed value".into()),
        Some(m) if m.rows() != expected.rows() || m.cols() != expected.cols() => details.push(format!(
            "shape: expected {}×{}, computed {}×{}",
            expected.rows(),
            expected.cols(),
            m.rows(),
            m.cols()
        )),
        Some(m) => {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if m.get(r, c) != expected.get(r, c) {
                        details.push(format!(
                            "entry ({r}, {c}): expected {}, computed {}",
                            expected.get(r, c),
                            m.get(r, c)
                        ));
                    }
                }
            }
        }
    }
    Check { name: name.into(), passed: details.is_empty(), details }
}

/// Compares everything in `c` with `expected` under the relabelling of simples
/// that disagrees with the fewest published entries.
pub fn check_against(c: &Computed, expected: &PublishedMatrices) -> Report {
    let n = c.simple_dims.len();
    let c2_rec = tower_cartan(&c.c1, &c.b, 2).ok();
    let c3_rec = tower_cartan(&c.c1, &c.b, 3).ok();
    let perm = (n == expected.c1.rows())
        .then(|| {
            permutations(n).into_iter().min_by_key(|p| {
                mismatches(&c.c1.permuted(p), &expected.c1)
                    + mismatches(&c.b.permuted(p), &expected.b)
                    + mismatches(&c.c2_direct.permuted(p), &expected.c2)
                    + c3_rec.as_ref().map_or(0, |m| mismatches(&m.permuted(p), &expected.c3))
            })
        })
        .flatten();
    let Some(perm) = perm else {
        let fail = |name: &str| Check { name: name.into(), passed: false, details: vec![format!("{n} simples, expected 3")] };
        return Report { permutation: None, checks: vec![fail("number of simples")] };
    };
    let relabel = |m: &IntMatrix| m.permuted(&perm);

    let mut checks = vec![
        compare("C(G1) from D^T D", Some(&relabel(&c.c1)), &expected.c1),
        compare("B from the section character", Some(&relabel(&c.b)), &expected.b),
        compare("B = C(G2) C(G1)^-1", c.b_from_cartans.as_ref().map(relabel).as_ref(), &expected.b),
        compare("C(G2) from D^T D", Some(&relabel(&c.c2_direct)), &expected.c2),
        compare("C(G2) = B C(G1)", c2_rec.as_ref().map(relabel).as_ref(), &expected.c2),
        compare("C(G3) = B^2 C(G1)", c3_rec.as_ref().map(relabel).as_ref(), &expected.c3),
    ];

    let mut details = Vec::new();
    for n in 1..=8u32 {
        let (closed, det) = match sl2_closed_form(n) {
            Ok(x) => x,
            Err(e) => {
                details.push(format!("n = {n}: {e}"));
                continue;
            }
        };
        let from_published = int_matpow(&expected.b, (n - 1) as u64).mul(&expected.c1);
        if closed != from_published {
            details.push(format!("n = {n}: closed form differs from B^(n-1) C(G1) with the published B and C(G1)"));
        }
        match tower_cartan(&c.c1, &c.b, n as u64) {
            Ok(rec) if relabel(&rec) == closed => {}
            _ => details.push(format!("n = {n}: closed form differs from the computed recursion")),
        }
        let want = BigInt::from(3).pow(7 * n - 5);
        if det != want || int_det(&closed) != want {
            details.push(format!("n = {n}: determinant {det}, expected 3^{}", 7 * n - 5));
        }
    }
    checks.push(Check { name: "closed form and det = 3^(7n-5), n = 1..8".into(), passed: details.is_empty(), details });

    let mut dims = vec![0; n];
    for (ours, &theirs) in perm.iter().enumerate() {
        dims[theirs] = c.simple_dims[ours];
    }
    let mut details = Vec::new();
    if dims != [1, 3, 2] {
        details.push(format!("published order has dimensions {dims:?}, expected [1, 3, 2]"));
    }
    let big_dims: Vec<BigInt> = dims.iter().map(|&d| BigInt::from(d)).collect();
    if let Err(e) = check_dimension_count(&expected.b, &big_dims, 27) {
        details.push(format!("published B: {e}"));
    }
    checks.push(Check { name: "published order is by dimension 1, 3, 2".into(), passed: details.is_empty(), details });

    Report { permutation: Some(perm), checks }
}

/// Runs the pipeline through the cache and checks it against the published
/// matrices after applying `injections`.
pub fn verify_paper_example(
    seed: u64,
    cache: &Cache,
    injections: &[Injection],
) -> Result<(ResultEnvelope, Report), CliError> {
    let mut expected = PublishedMatrices::published();
    for inj in injections {
        inj.apply(&mut expected)?;
    }
    let mut env = run_cached(
        "verify-paper-example",
        json!({"seed": seed}),
        cache,
        |v| Computed::from_json(v).is_some(),
        || Ok(compute(seed)?.to_json()),
    )?;
    let computed = Computed::from_json(&env.payload).expect("payload was accepted or freshly computed");
    let report = check_against(&computed, &expected);
    env.payload = json!({"computed": env.payload, "report": report.to_json()});
    Ok((env, report))
}
