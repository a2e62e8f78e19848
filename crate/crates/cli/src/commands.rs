//! The subcommands. Each one canonicalizes its input, looks the digest up in
//! the cache, and otherwise computes a JSON payload.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use modrep::arith::{is_prime, make_field, ArithError, FiniteField};
use modrep::cde::{BlockPartition, ModularData};
use modrep::characters::{default_field_degree, BrauerCharacterTable, CharacterTable, ClassFunction};
use modrep::group::{FiniteGroup, DEFAULT_CAP};
use modrep::linalg::int_det;
use modrep::tower::{build_tower, find_simultaneous_permutation, s3_tower, tower_cartan, TowerDescriptor};

use crate::verify::PublishedMatrices;
use crate::{json, Cache, CliError, GroupSpec};

pub const ARTIFACT_VERSION: &str = concat!("modrep-", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub command: String,
    pub input_digest: String,
    pub artifact_version: String,
    pub payload: Value,
    pub timing: Timing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
    pub cache_hit: bool,
}

impl ResultEnvelope {
    /// The payload in the compact form used for byte comparisons.
    pub fn payload_bytes(&self) -> String {
        self.payload.to_string()
    }
}

/// SHA-256 over the canonical JSON of command, input and artifact version.
pub fn input_digest(command: &str, input: &Value) -> String {
    let canonical = json!({"artifact_version": ARTIFACT_VERSION, "command": command, "input": input});
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

/// Cached payload if `accept` likes it, otherwise a fresh one.
pub(crate) fn run_cached(
    command: &str,
    input: Value,
    cache: &Cache,
    accept: impl Fn(&Value) -> bool,
    compute: impl FnOnce() -> Result<Value, CliError>,
) -> Result<ResultEnvelope, CliError> {
    let start = Instant::now();
    let digest = input_digest(command, &input);
    let (payload, cache_hit) = match cache.load(&digest, command).filter(|v| accept(v)) {
        Some(v) => (v, true),
        None => {
            let v = compute()?;
            if let Err(e) = cache.store(&digest, command, &v) {
                eprintln!("warning: could not write cache entry {digest}: {e}");
            }
            (v, false)
        }
    };
    Ok(ResultEnvelope {
        command: command.into(),
        input_digest: digest,
        artifact_version: ARTIFACT_VERSION.into(),
        payload,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() as u64, cache_hit },
    })
}

fn run(
    command: &str,
    input: Value,
    cache: &Cache,
    compute: impl FnOnce() -> Result<Value, CliError>,
) -> Result<ResultEnvelope, CliError> {
    run_cached(command, input, cache, |_| true, compute)
}

/// Inputs shared by the commands that work over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularArgs {
    pub spec: GroupSpec,
    pub p: u32,
    /// Defaults to the smallest degree whose field holds all p′-roots of unity
    /// of the group exponent.
    pub field_degree: Option<u32>,
    pub seed: u64,
}

impl ModularArgs {
    fn input(&self) -> Value {
        json!({"spec": self.spec.to_json(), "p": self.p, "field_degree": self.field_degree, "seed": self.seed})
    }

    fn group_and_field(&self) -> Result<(Arc<FiniteGroup>, Arc<FiniteField>), CliError> {
        if !is_prime(self.p as u64) {
            return Err(CliError::Input(format!("p = {} is not prime", self.p)));
        }
        let g = Arc::new(self.spec.build()?);
        let degree = self.field_degree.unwrap_or_else(|| default_field_degree(&g, self.p));
        Ok((g, field(self.p, degree)?))
    }

    fn modular_data(&self) -> Result<ModularData, CliError> {
        let (g, f) = self.group_and_field()?;
        ModularData::compute(g, f, self.seed).map_err(CliError::computation)
    }
}

fn field(p: u32, degree: u32) -> Result<Arc<FiniteField>, CliError> {
    if degree == 0 {
        return Err(CliError::Input("field degree must be at least 1".into()));
    }
    make_field(p, degree, None).map(Arc::new).map_err(|e| match e {
        ArithError::NotPrime(_) | ArithError::FieldTooLarge(_) => CliError::Input(e.to_string()),
        _ => CliError::computation(e),
    })
}

fn group_json(g: &FiniteGroup) -> Value {
    let cc = g.conjugacy_classes();
    let classes: Vec<Value> = (0..cc.len())
        .map(|c| {
            json!({
                "representative": g.element(cc.representative(c)).to_rows(),
                "size": cc.size(c),
                "element_order": cc.element_order(c),
            })
        })
        .collect();
    json!({
        "order": g.order(),
        "modulus": g.modulus(),
        "dim": g.dim(),
        "exponent": g.exponent(),
        "classes": classes,
    })
}

fn field_json(f: &FiniteField) -> Value {
    json!({"characteristic": f.characteristic(), "degree": f.degree(), "modulus": f.modulus()})
}

fn rows_json(rows: &[ClassFunction]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.values().iter().map(json::cyclotomic).collect())).collect())
}

fn character_table_json(t: &CharacterTable) -> Value {
    json!({
        "group": group_json(t.group()),
        "dixon_prime": t.dixon_prime(),
        "degrees": t.degrees(),
        "values": rows_json(t.rows()),
    })
}

fn brauer_table_json(bt: &BrauerCharacterTable) -> Value {
    json!({
        "p": bt.p(),
        "field": field_json(bt.field()),
        "p_regular_classes": bt.classes(),
        "dims": bt.dims(),
        "values": rows_json(&bt.rows()),
    })
}

fn blocks_json(b: &BlockPartition) -> Value {
    let blocks: Vec<Value> = b
        .simple_blocks()
        .into_iter()
        .zip(b.ordinary_blocks())
        .map(|(simples, ordinary)| json!({"simples": simples, "ordinary": ordinary}))
        .collect();
    Value::Array(blocks)
}

const ORDERING: &str = "ordinary irreducibles by degree and simples by dimension, each ascending; \
the trivial character first; ties by decreasing canonical value vector";

pub fn chartable(spec: &GroupSpec, cache: &Cache) -> Result<ResultEnvelope, CliError> {
    run("chartable", json!({"spec": spec.to_json()}), cache, || {
        let g = Arc::new(spec.build()?);
        let t = modrep::characters::dixon_character_table(g).map_err(CliError::computation)?;
        Ok(character_table_json(&t))
    })
}

pub fn brauertable(args: &ModularArgs, cache: &Cache) -> Result<ResultEnvelope, CliError> {
    run("brauertable", args.input(), cache, || {
        let (g, f) = args.group_and_field()?;
        let bt = BrauerCharacterTable::compute(g, f, args.seed).map_err(CliError::computation)?;
        Ok(brauer_table_json(&bt))
    })
}

pub fn decomp(args: &ModularArgs, cache: &Cache) -> Result<ResultEnvelope, CliError> {
    run("decomp", args.input(), cache, || {
        let d = args.modular_data()?;
        Ok(json!({
            "p": args.p,
            "field": field_json(d.brauer.field()),
            "ordinary_degrees": d.characters.degrees(),
            "simple_dims": d.brauer.dims(),
            "decomposition": json::matrix(d.decomposition.matrix()),
            "ordering": ORDERING,
        }))
    })
}

pub fn cartan(args: &ModularArgs, cache: &Cache) -> Result<ResultEnvelope, CliError> {
    run("cartan", args.input(), cache, || {
        let d = args.modular_data()?;
        Ok(json!({
            "p": args.p,
            "field": field_json(d.brauer.field()),
            "ordinary_degrees": d.characters.degrees(),
            "simple_dims": d.brauer.dims(),
            "decomposition": json::matrix(d.decomposition.matrix()),
            "cartan": json::matrix(&d.cartan),
            "determinant": json::int(&int_det(&d.cartan)),
            "blocks": blocks_json(&d.blocks),
            "ordering": ORDERING,
        }))
    })
}

pub fn blocks(args: &ModularArgs, cache: &Cache) -> Result<ResultEnvelope, CliError> {
    run("blocks", args.input(), cache, || {
        let d = args.modular_data()?;
        let b = &d.blocks;
        Ok(json!({
            "p": args.p,
            "ordinary_degrees": d.characters.degrees(),
            "simple_dims": d.brauer.dims(),
            "blocks": blocks_json(b),
            "block_of_simple": (0..d.brauer.len()).map(|s| b.block_of_simple(s)).collect::<Vec<_>>(),
            "block_of_ordinary": (0..d.characters.len()).map(|c| b.block_of_ordinary(c)).collect::<Vec<_>>(),
        }))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TowerFamily {
    /// `SL₂(ℤ/pⁿ)`.
    Sl2,
    /// `S₃ → C₂` at `p = 3`, two levels.
    S3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerArgs {
    pub family: TowerFamily,
    pub p: u32,
    /// Number of levels to enumerate.
    pub depth: usize,
    /// Largest `n` for which `C(G_n)` is reported.
    pub n_max: u64,
    pub seed: u64,
}

impl TowerArgs {
    fn input(&self) -> Value {
        json!({"family": self.family, "p": self.p, "depth": self.depth, "n_max": self.n_max, "seed": self.seed})
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.depth == 0 || self.n_max == 0 {
            return Err(CliError::Input("depth and n-max must be at least 1".into()));
        }
        if self.n_max > 1 && self.depth < 2 {
            return Err(CliError::Input("n-max above 1 needs depth at least 2 to compute B".into()));
        }
        if !is_prime(self.p as u64) {
            return Err(CliError::Input(format!("p = {} is not prime", self.p)));
        }
        if self.family == TowerFamily::S3 && (self.p != 3 || self.depth > 2 || self.n_max > 2) {
            return Err(CliError::Input("the s3 family has p = 3 and two levels".into()));
        }
        Ok(())
    }

    fn descriptor(&self) -> Result<TowerDescriptor, CliError> {
        match self.family {
            TowerFamily::Sl2 => build_tower(self.p, self.depth, DEFAULT_CAP).map_err(CliError::computation),
            TowerFamily::S3 => Ok(s3_tower()),
        }
    }
}

pub fn tower(args: &TowerArgs, cache: &Cache) -> Result<ResultEnvelope, CliError> {
    args.validate()?;
    run("tower", args.input(), cache, || {
        let t = args.descriptor()?;
        let g1 = t.level(1).map_err(CliError::computation)?.clone();
        let f = field(args.p, default_field_degree(&g1, args.p))?;
        let base = ModularData::compute(g1, f.clone(), args.seed).map_err(CliError::computation)?;
        let c1 = &base.cartan;

        let mut b = None;
        let mut uniformity = Vec::new();
        if args.depth >= 2 {
            let bt = t.inflate_table(&base.brauer, 2).map_err(CliError::computation)?;
            let b1 = t.b_matrix(1, &bt).map_err(CliError::computation)?;
            for i in 1..args.depth.saturating_sub(1) {
                let witness = t.verify_uniform(i).map_err(CliError::computation)?;
                let bt = t.inflate_table(&base.brauer, i + 2).map_err(CliError::computation)?;
                let next = t.b_matrix(i + 1, &bt).map_err(CliError::computation)?;
                if next != b1 {
                    return Err(CliError::Computation(format!("B for sections {i} and {} differ", i + 1)));
                }
                uniformity.push(json!({
                    "level": i,
                    "p_power_images": witness,
                    "b_next": json::matrix(&next),
                }));
            }
            b = Some(b1);
        }

        let mut cartans = Vec::new();
        for n in 1..=args.n_max {
            let c = match &b {
                Some(b) => tower_cartan(c1, b, n).map_err(CliError::computation)?,
                None => c1.clone(),
            };
            cartans.push(json!({"n": n, "matrix": json::matrix(&c), "determinant": json::int(&int_det(&c))}));
        }

        let reference_permutation = match (&b, args.family, args.p) {
            (Some(b), TowerFamily::Sl2, 3) => {
                let published = PublishedMatrices::published();
                find_simultaneous_permutation(&[c1, b], &[&published.c1, &published.b])
            }
            _ => None,
        };

        Ok(json!({
            "family": args.family,
            "p": args.p,
            "depth": args.depth,
            "field": field_json(&f),
            "level_orders": (1..=t.depth()).map(|n| t.level(n).map(|g| g.order()).unwrap_or(0)).collect::<Vec<_>>(),
            "simple_dims": base.brauer.dims(),
            "c1": json::matrix(c1),
            "b": b.as_ref().map(json::matrix),
            "uniformity": uniformity,
            "cartans": cartans,
            "reference_permutation": reference_permutation,
            "ordering": ORDERING,
        }))
    })
}
