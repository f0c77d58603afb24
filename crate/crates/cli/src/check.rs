//! `--check`: re-verification of a records-format report.
//!
//! The echoed command is re-parsed and its inputs re-read (paths resolve
//! against the current directory). The digest must match, the witnesses must
//! satisfy their defining identities, checked here with plain group and
//! matrix arithmetic rather than the enumeration that produced them, and a
//! fresh run must reproduce every record.

use std::sync::Arc;

use clap::Parser;
use galcoh::groups::{Action, Elem, FiniteGroup, Group, GroupAction, GroupHom, Perm};
use galcoh::lattices::{identity, inverse, mat_conj, mat_mul, KMatrix};
use galcoh::quadfields::QuadField;
use galcoh::tensorforms::{act_on_family, GaloisFieldTower, MatrixGroupK, DEFAULT_MATRIX_BOUND};
use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::codec;
use crate::commands;
use crate::input::{CliError, CliResult, InputFile};
use crate::problem::problem;
use crate::report::{ParsedReport, Report, Status};
use crate::{run, Cli, Command};

struct Verdict {
    failures: Vec<String>,
    verified: usize,
}

impl Verdict {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.verified += 1;
        } else {
            self.failures.push(what());
        }
    }
}

pub fn check_report(path: &str) -> CliResult<Report> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.to_string(),
        line: 0,
        message: e.to_string(),
    })?;
    let parsed = ParsedReport::parse(path, &text)?;
    let words = shell_words::split(&parsed.command).map_err(|e| CliError::Input {
        path: path.to_string(),
        line: 0,
        message: format!("command echo does not parse: {e}"),
    })?;
    let cli = Cli::try_parse_from(std::iter::once("galcoh".to_string()).chain(words))
        .map_err(|e| CliError::Usage(format!("echoed command is invalid: {e}")))?;
    let command = cli
        .command
        .ok_or_else(|| CliError::Usage("report does not echo a subcommand".into()))?;

    let fresh = run(&command, parsed.command.clone())?;
    let mut v = Verdict {
        failures: Vec::new(),
        verified: 0,
    };
    v.require(fresh.digest == parsed.digest, || "inputs changed since the report was written".into());
    verify_witnesses(&command, &parsed, &mut v)?;
    let status = match fresh.status {
        Status::Ok => "ok",
        Status::Undecided => "undecided",
        Status::Failed => "failed",
    };
    v.require(status == parsed.status, || format!("status is now {status}, report says {}", parsed.status));
    v.require(fresh.records == parsed.records, || {
        let diff = fresh
            .records
            .iter()
            .zip(&parsed.records)
            .find(|(a, b)| a != b)
            .map(|(a, b)| format!("`{}: {}` vs `{}: {}`", a.0, a.1, b.0, b.1))
            .unwrap_or_else(|| format!("{} records vs {}", fresh.records.len(), parsed.records.len()));
        format!("records differ from a fresh run: {diff}")
    });
    v.require(fresh.witnesses.len() == parsed.witnesses.len(), || "witness count differs from a fresh run".into());

    let mut out = Report::new(format!("--check {}", shell_words::quote(path)), &[]);
    out.digest = parsed.digest.clone();
    out.record("checked.command", &parsed.command);
    out.record("checked.verified", v.verified);
    out.record("checked.failures", v.failures.len());
    for (i, f) in v.failures.iter().enumerate() {
        out.record(format!("failure.{i}"), f);
    }
    out.record("check", if v.failures.is_empty() { "pass" } else { "fail" });
    if !v.failures.is_empty() {
        out.status = Status::Failed;
    }
    Ok(out)
}

fn verify_witnesses(command: &Command, parsed: &ParsedReport, v: &mut Verdict) -> CliResult<()> {
    match command {
        Command::H1 { file, .. } | Command::Genus { file, .. } => {
            let f = InputFile::read(file)?;
            let p = problem(&f)?;
            verify_cocycles(&p.action, parsed, v);
        }
        Command::Lattice { d, .. } => verify_lattice(&QuadField::new(*d)?, parsed, v),
        Command::Etale { group, n, .. } => {
            let (gamma, _) = commands::etale_group(group)?;
            verify_etale(&gamma, *n, parsed, v)?;
        }
        Command::Units { d, .. } => verify_units(&QuadField::new(*d)?, parsed, v),
        Command::Forms {
            p,
            k_deg,
            ext,
            tensor,
            bound,
        } => {
            let tower = Arc::new(GaloisFieldTower::new(*p, *k_deg, *ext)?);
            let fam = commands::tensor_family(&InputFile::read(tensor)?, &tower)?;
            let gl = MatrixGroupK::general(tower.clone(), fam.dim(), bound.unwrap_or(DEFAULT_MATRIX_BOUND))?;
            for (i, w) in parsed.witnesses_with_prefix("form.") {
                let Some(i) = i.strip_suffix(".transporter") else { continue };
                let entries: Option<Vec<u32>> = w.split_whitespace().map(|x| x.parse().ok()).collect();
                let rep = record(parsed, &format!("form.{i}.representative"));
                let ok = entries.is_some_and(|e| {
                    e.len() == fam.dim() * fam.dim()
                        && rep.is_some_and(|r| commands::join_u32(&act_on_family(&gl, gl.encode(&e), &fam)) == r)
                });
                v.require(ok, || format!("transporter of form {i} does not carry the family to its representative"));
            }
        }
    }
    Ok(())
}

fn record<'a>(parsed: &'a ParsedReport, key: &str) -> Option<&'a str> {
    parsed.records.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn parse_elems(g: &FiniteGroup, text: &str) -> Option<Vec<Elem>> {
    text.split(';')
        .map(|t| Perm::parse_cycles(g.degree(), t).ok().and_then(|p| g.index_of(&p)))
        .collect()
}

fn twist(action: &GroupAction, z: &[Elem], a: Elem) -> Vec<Elem> {
    let c = action.coefficient();
    z.iter()
        .enumerate()
        .map(|(g, &x)| c.mul(c.mul(c.inv(a), x), action.act(g as Elem, a)))
        .collect()
}

/// Each listed cocycle satisfies `α(hg) = α(h)·α(g)^h` and is the twist of
/// its class representative by the stated element; representatives are
/// pairwise inequivalent by exhaustion over the coefficient group.
fn verify_cocycles(action: &GroupAction, parsed: &ParsedReport, v: &mut Verdict) {
    let actor = action.actor();
    let coef = action.coefficient();
    let classes: usize = record(parsed, "classes").and_then(|c| c.parse().ok()).unwrap_or(0);
    let reps: Vec<Option<Vec<Elem>>> = (0..classes)
        .map(|c| record(parsed, &format!("class.{c}.representative")).and_then(|t| parse_elems(coef, t)))
        .collect();
    v.require(reps.iter().all(Option::is_some), || "a class representative does not parse".into());
    let reps: Vec<Vec<Elem>> = reps.into_iter().flatten().collect();
    let mut listed = 0usize;
    for (i, w) in parsed.witnesses_with_prefix("cocycle.") {
        listed += 1;
        let parts: Vec<&str> = w.split(" | ").collect();
        let parsed_ok = (|| {
            let [values, class, via] = parts[..] else { return None };
            let z = parse_elems(coef, values)?;
            let class: usize = class.strip_prefix("class ")?.parse().ok()?;
            let via = parse_elems(coef, via.strip_prefix("via ")?)?;
            Some((z, class, *via.first()?))
        })();
        let Some((z, class, a)) = parsed_ok else {
            v.require(false, || format!("cocycle witness {i} does not parse"));
            continue;
        };
        let n = actor.order() as Elem;
        let identity = z.len() == n as usize
            && (0..n).all(|h| (0..n).all(|g| z[actor.mul(h, g) as usize] == coef.mul(z[h as usize], action.act(h, z[g as usize]))));
        v.require(identity, || format!("cocycle {i} violates the cocycle identity"));
        let relates = reps.get(class).is_some_and(|r| twist(action, r, a) == z);
        v.require(relates, || format!("cocycle {i} is not the twist of representative {class} by its witness"));
    }
    v.require(record(parsed, "cocycles").and_then(|c| c.parse().ok()) == Some(listed), || {
        "number of cocycle witnesses differs from the cocycle count".into()
    });
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let distinct = (0..coef.order() as Elem).all(|a| twist(action, &reps[i], a) != reps[j]);
            v.require(distinct, || format!("representatives {i} and {j} are cohomologous"));
        }
    }
}

fn verify_lattice(field: &QuadField, parsed: &ParsedReport, v: &mut Verdict) {
    let Some(a) = parsed.witness("cocycle") else { return };
    let Some(a) = codec::parse_matrix(a) else {
        v.require(false, || "cocycle witness does not parse".into());
        return;
    };
    let n = a.len();
    let conj = |m: &KMatrix| mat_conj(field, m);
    v.require(mat_mul(field, &a, &conj(&a)) == identity(n), || "cocycle does not satisfy a·σ(a) = 1".into());
    if let Some(phi) = parsed.witness("phi").and_then(codec::parse_matrix) {
        let ok = inverse(field, &phi).is_some_and(|pi| mat_mul(field, &conj(&phi), &pi) == a);
        v.require(ok, || "cocycle is not σ(φ)·φ⁻¹".into());
    }
    for key in ["in_v", "k_free"] {
        if let Some(b) = parsed.witness(key).and_then(codec::parse_matrix) {
            let ok = inverse(field, &b).is_some_and(|bi| mat_mul(field, &bi, &conj(&b)) == a);
            v.require(ok, || format!("{key} witness does not split the cocycle"));
        }
    }
}

fn verify_etale(gamma: &FiniteGroup, n: usize, parsed: &ParsedReport, v: &mut Verdict) -> CliResult<()> {
    let sym = FiniteGroup::symmetric(n)?;
    let mut homs = Vec::new();
    for (key, w) in parsed.witnesses_with_prefix("class.") {
        let Some(i) = key.strip_suffix(".hom") else { continue };
        let hom = parse_elems(&sym, w).and_then(|imgs| GroupHom::from_images(gamma, &sym, imgs).ok());
        let Some(hom) = hom else {
            v.require(false, || format!("class {i} is not a homomorphism"));
            continue;
        };
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < orbit.len() {
                for &g in hom.images() {
                    let y = sym.element(g).apply(orbit[k]);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            sizes.push(orbit.len());
        }
        sizes.sort_unstable();
        let claimed = record(parsed, &format!("class.{i}.partition"));
        v.require(claimed == Some(codec::indices(&sizes).as_str()), || {
            format!("orbit partition of class {i} does not match its homomorphism")
        });
        homs.push(hom);
    }
    for i in 0..homs.len() {
        for j in i + 1..homs.len() {
            let conjugate = (0..sym.order() as Elem).any(|p| {
                homs[i]
                    .images()
                    .iter()
                    .zip(homs[j].images())
                    .all(|(&x, &y)| sym.conjugate(x, p) == y)
            });
            v.require(!conjugate, || format!("classes {i} and {j} are conjugate"));
        }
    }
    Ok(())
}

/// `g` generates a product of ramified primes (norm `±∏p`) and `σ(g) = g·u`
/// with `u` a unit.
fn verify_units(field: &QuadField, parsed: &ParsedReport, v: &mut Verdict) {
    for (i, w) in parsed.witnesses_with_prefix("ambiguous.class.") {
        let parts: Vec<&str> = w.split(" | ").collect();
        let fields = (|| {
            let [primes, g, u] = parts[..] else { return None };
            let product: BigInt = primes
                .strip_prefix("primes ")?
                .split('*')
                .map(|p| p.parse::<BigInt>().ok())
                .product::<Option<BigInt>>()?;
            Some((product, codec::parse_element(g.strip_prefix("generator ")?)?, codec::parse_element(u.strip_prefix("unit ")?)?))
        })();
        let Some((product, g, u)) = fields else {
            v.require(false, || format!("ambiguous witness {i} does not parse"));
            continue;
        };
        let norm = field.norm(&g);
        v.require(g.is_integral() && norm.is_integer() && norm.numer().abs() == product, || {
            format!("generator {i} does not have norm ±{product}")
        });
        let unit = u.is_integral() && field.norm(&u).abs().is_one();
        v.require(unit && field.conj(&g) == field.mul(&g, &u), || format!("σ(g) ≠ g·u for ambiguous class {i}"));
    }
}
