//! Problem generators and the problem-file parser: the commuting-matrices
//! family and user-supplied multigraded ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lattice::Multidegree;
use crate::poly::{
    parse_polynomial, polynomial_to_string, FieldError, GradingError, GradingMap, Monomial,
    OrderKind, PolyRing, Polynomial, PrimeField, RingError,
};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("missing `{0}:` line")]
    MissingField(&'static str),
    #[error("no degree line for variable `{0}`")]
    MissingDegree(String),
    #[error("generator {index} is not homogeneous: terms of degree {first} and {second}")]
    NonHomogeneousGenerator {
        index: usize,
        first: Multidegree,
        second: Multidegree,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("unknown builtin problem `{0}` (expected commuting:N)")]
    UnknownBuiltin(String),
}

/// A fully validated input: ring, grading, and homogeneous generators.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    ring: PolyRing,
    grading: GradingMap,
    generators: Vec<Polynomial>,
}

impl ProblemSpec {
    pub fn new(
        ring: PolyRing,
        grading: GradingMap,
        generators: Vec<Polynomial>,
    ) -> Result<Self, ProblemError> {
        assert_eq!(
            grading.nvars(),
            ring.nvars(),
            "grading covers a different variable count than the ring"
        );
        for (index, g) in generators.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if let Err(e) = grading.homogeneous_degree(g) {
                return Err(ProblemError::NonHomogeneousGenerator {
                    index,
                    first: e.first,
                    second: e.second,
                });
            }
        }
        Ok(ProblemSpec {
            ring,
            grading,
            generators,
        })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn grading(&self) -> &GradingMap {
        &self.grading
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The same problem under a different monomial order. Generators are
    /// re-sorted; homogeneity is untouched.
    pub fn with_order(&self, kind: OrderKind) -> ProblemSpec {
        let ring = PolyRing::new(*self.ring.field(), self.ring.vars().to_vec(), kind)
            .expect("names were already unique");
        let generators = self
            .generators
            .iter()
            .map(|g| {
                ring.polynomial(
                    g.terms()
                        .iter()
                        .map(|t| (t.coeff, t.monomial.clone())),
                )
            })
            .collect();
        ProblemSpec {
            ring,
            grading: self.grading.clone(),
            generators,
        }
    }

    /// Canonical problem-file text; `parse_problem` inverts it exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("modulus: {}\n", self.ring.field().modulus()));
        out.push_str(&format!("vars: {}\n", self.ring.vars().join(" ")));
        out.push_str(&format!("grading-dim: {}\n", self.grading.dim()));
        for (i, v) in self.ring.vars().iter().enumerate() {
            out.push_str(&format!("degree: {v} {}\n", self.grading.var_degree(i)));
        }
        out.push_str(&format!("order: {}\n", self.ring.order().kind()));
        for g in &self.generators {
            out.push_str(&format!("gen: {}\n", polynomial_to_string(&self.ring, g)));
        }
        out
    }
}

/// The ideal of Example-style commuting matrices: 2n² variables x11…xnn,
/// y11…ynn (row-major), grading x ↦ (1,0) and y ↦ (0,1), degrevlex, and
/// the n² entries of XY − YX as generators.
pub fn commuting_matrices(n: usize) -> ProblemSpec {
    assert!(
        (1..=9).contains(&n),
        "commuting:N supports 1 ≤ N ≤ 9 (two-digit variable names)"
    );
    let mut vars = Vec::with_capacity(2 * n * n);
    for prefix in ["x", "y"] {
        for i in 1..=n {
            for j in 1..=n {
                vars.push(format!("{prefix}{i}{j}"));
            }
        }
    }
    let nvars = vars.len();
    let x_index = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let y_index = |i: usize, j: usize| n * n + (i - 1) * n + (j - 1);

    let field = PrimeField::new(32003).expect("32003 is prime");
    let ring = PolyRing::new(field, vars, OrderKind::DegRevLex).expect("names are unique");

    let mut var_degrees = Vec::with_capacity(nvars);
    for _ in 0..n * n {
        var_degrees.push(Multidegree::new(vec![1, 0]));
    }
    for _ in 0..n * n {
        var_degrees.push(Multidegree::new(vec![0, 1]));
    }
    let grading = GradingMap::new(var_degrees).expect("degrees are nonzero");

    let minus_one = field.neg(1);
    let mut generators = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let mut terms = Vec::with_capacity(2 * n);
            for k in 1..=n {
                // (XY)_{ij} − (YX)_{ij} = Σ_k x_{ik} y_{kj} − x_{kj} y_{ik}.
                let mut plus = vec![0u32; nvars];
                plus[x_index(i, k)] += 1;
                plus[y_index(k, j)] += 1;
                terms.push((1u64, Monomial::from_exps(plus)));
                let mut minus = vec![0u32; nvars];
                minus[x_index(k, j)] += 1;
                minus[y_index(i, k)] += 1;
                terms.push((minus_one, Monomial::from_exps(minus)));
            }
            generators.push(ring.polynomial(terms));
        }
    }

    ProblemSpec::new(ring, grading, generators).expect("commutator entries are homogeneous")
}

/// Resolves `commuting:N` builtin names.
pub fn builtin_problem(name: &str) -> Result<ProblemSpec, ProblemError> {
    if let Some(n) = name.strip_prefix("commuting:") {
        if let Ok(n) = n.parse::<usize>() {
            if (1..=9).contains(&n) {
                return Ok(commuting_matrices(n));
            }
        }
    }
    Err(ProblemError::UnknownBuiltin(name.to_string()))
}

struct RawLine<'a> {
    number: usize,
    value: &'a str,
    value_col: usize,
}

/// Splits a problem or basis file into `key: value` lines, dropping blank
/// lines and `#` comments.
fn split_key_value_lines(text: &str) -> Result<Vec<(usize, &str, &str, usize)>, ProblemError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            return Err(ProblemError::Syntax {
                line: number,
                col: 1,
                message: format!("expected `key: value`, found `{}`", line.trim()),
            });
        };
        let key = line[..colon].trim();
        let value_start = colon + 1;
        let value = line[value_start..].trim();
        let leading_ws = line[value_start..].len() - line[value_start..].trim_start().len();
        let value_col = value_start + leading_ws + 1;
        out.push((number, key, value, value_col));
    }
    Ok(out)
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> ProblemError {
    ProblemError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// Parsed header common to problem and basis files, plus the raw
/// polynomial-carrying lines (line number, value column, text).
pub(crate) struct ParsedRingFile {
    pub ring: PolyRing,
    pub grading: GradingMap,
    pub entries: Vec<(usize, usize, String)>,
}

pub(crate) fn parse_ring_file(text: &str, entry_key: &str) -> Result<ParsedRingFile, ProblemError> {
    let lines = split_key_value_lines(text)?;
    let mut modulus: Option<(usize, u64)> = None;
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut grading_dim: Option<(usize, usize)> = None;
    let mut order: Option<(usize, OrderKind)> = None;
    let mut degree_lines: Vec<RawLine> = Vec::new();
    let mut entry_lines: Vec<RawLine> = Vec::new();

    for (number, key, value, value_col) in lines {
        let raw = RawLine {
            number,
            value,
            value_col,
        };
        match key {
            "modulus" => {
                let p = value
                    .parse::<u64>()
                    .map_err(|e| syntax(number, value_col, format!("bad modulus: {e}")))?;
                modulus = Some((number, p));
            }
            "vars" => {
                let names: Vec<String> = value.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(syntax(number, value_col, "vars line names no variables"));
                }
                vars = Some((number, names));
            }
            "grading-dim" => {
                let d = value
                    .parse::<usize>()
                    .map_err(|e| syntax(number, value_col, format!("bad grading-dim: {e}")))?;
                grading_dim = Some((number, d));
            }
            "order" => {
                let kind = value
                    .parse::<OrderKind>()
                    .map_err(|e| syntax(number, value_col, e))?;
                order = Some((number, kind));
            }
            "degree" => degree_lines.push(raw),
            k if k == entry_key => entry_lines.push(raw),
            other => {
                return Err(syntax(
                    number,
                    1,
                    format!("unknown key `{other}` in this file"),
                ));
            }
        }
    }

    let (_, p) = modulus.ok_or(ProblemError::MissingField("modulus"))?;
    let (_, names) = vars.ok_or(ProblemError::MissingField("vars"))?;
    let (_, dim) = grading_dim.ok_or(ProblemError::MissingField("grading-dim"))?;
    let (_, kind) = order.ok_or(ProblemError::MissingField("order"))?;

    let field = PrimeField::new(p)?;
    let ring = PolyRing::new(field, names, kind)?;

    let mut var_degrees: Vec<Option<Multidegree>> = vec![None; ring.nvars()];
    for l in &degree_lines {
        let mut parts = l.value.splitn(2, char::is_whitespace);
        let name = parts.next().unwrap_or("");
        let rest = parts.next().unwrap_or("").trim();
        let Some(var) = ring.var_index(name) else {
            return Err(syntax(
                l.number,
                l.value_col,
                format!("unknown variable `{name}` in degree line"),
            ));
        };
        let d: Multidegree = rest
            .parse()
            .map_err(|e| syntax(l.number, l.value_col, e))?;
        if d.dim() != dim {
            return Err(syntax(
                l.number,
                l.value_col,
                format!("degree {d} has dimension {}, expected {dim}", d.dim()),
            ));
        }
        if var_degrees[var].is_some() {
            return Err(syntax(
                l.number,
                l.value_col,
                format!("duplicate degree line for `{name}`"),
            ));
        }
        var_degrees[var] = Some(d);
    }
    for (i, d) in var_degrees.iter().enumerate() {
        if d.is_none() {
            return Err(ProblemError::MissingDegree(ring.vars()[i].clone()));
        }
    }
    let grading = GradingMap::new(var_degrees.into_iter().map(Option::unwrap).collect())?;

    let entries = entry_lines
        .iter()
        .map(|l| (l.number, l.value_col, l.value.to_string()))
        .collect();

    Ok(ParsedRingFile {
        ring,
        grading,
        entries,
    })
}

/// Parses one polynomial-valued line, rebasing the error column onto the
/// whole-line position.
pub(crate) fn parse_entry_polynomial(
    ring: &PolyRing,
    line: usize,
    value_col: usize,
    text: &str,
) -> Result<Polynomial, ProblemError> {
    parse_polynomial(ring, text).map_err(|e| {
        syntax(line, value_col + e.col - 1, e.message)
    })
}

/// Parses the line-oriented problem-file grammar and validates the result,
/// including homogeneity of every generator.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, ProblemError> {
    let parsed = parse_ring_file(text, "gen")?;
    let mut generators = Vec::with_capacity(parsed.entries.len());
    for (line, col, value) in &parsed.entries {
        generators.push(parse_entry_polynomial(&parsed.ring, *line, *col, value)?);
    }
    ProblemSpec::new(parsed.ring, parsed.grading, generators)
}

/// Knobs for the random bigraded problem corpus used by the equivalence
/// test matrices.
#[derive(Debug, Clone)]
pub struct RandomProblemConfig {
    pub max_vars: usize,
    pub max_generators: usize,
    pub max_total_degree: u64,
    pub modulus: u64,
}

impl Default for RandomProblemConfig {
    fn default() -> Self {
        RandomProblemConfig {
            max_vars: 6,
            max_generators: 5,
            max_total_degree: 3,
            modulus: 101,
        }
    }
}

/// Deterministically generates a random homogeneous bigraded problem.
pub fn random_problem(seed: u64, cfg: &RandomProblemConfig) -> ProblemSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = PrimeField::new(cfg.modulus).expect("modulus must be prime");
    let nvars = rng.gen_range(2..=cfg.max_vars.max(2));
    let vars: Vec<String> = (1..=nvars).map(|i| format!("v{i}")).collect();
    let ring = PolyRing::new(field, vars, OrderKind::DegRevLex).expect("unique names");

    let choices = [
        Multidegree::new(vec![1, 0]),
        Multidegree::new(vec![0, 1]),
        Multidegree::new(vec![1, 1]),
    ];
    let var_degrees: Vec<Multidegree> = (0..nvars)
        .map(|_| choices[rng.gen_range(0..choices.len())].clone())
        .collect();
    let grading = GradingMap::new(var_degrees).expect("nonzero degrees");

    let gen_count = rng.gen_range(1..=cfg.max_generators.max(1));
    let mut generators = Vec::with_capacity(gen_count);
    for _ in 0..gen_count {
        // Pick a target degree by multiplying random variables together,
        // then sample monomials of exactly that degree.
        let steps = rng.gen_range(1..=cfg.max_total_degree.max(1));
        let mut probe = Monomial::one(nvars);
        for _ in 0..steps {
            probe = probe.mul(&Monomial::var(nvars, rng.gen_range(0..nvars)));
        }
        let target = grading.monomial_degree(&probe);
        let pool = grading.monomials_of_degree(&target);
        assert!(!pool.is_empty(), "probe monomial itself has this degree");
        let take = rng.gen_range(1..=pool.len().min(4));
        let mut picked: Vec<usize> = Vec::new();
        while picked.len() < take {
            let i = rng.gen_range(0..pool.len());
            if !picked.contains(&i) {
                picked.push(i);
            }
        }
        let terms: Vec<(u64, Monomial)> = picked
            .into_iter()
            .map(|i| (rng.gen_range(1..cfg.modulus), pool[i].clone()))
            .collect();
        generators.push(ring.polynomial(terms));
    }

    ProblemSpec::new(ring, grading, generators).expect("generators are homogeneous by construction")
}
