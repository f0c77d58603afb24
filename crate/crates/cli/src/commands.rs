use std::sync::Arc;

use galcoh::cohomology::{
    classifier_orbits, connecting_invariants, enumerate_h1, genus_kernel, induced_map, CoefficientMap, Cocycle,
    H1Set, LocalMap, DEFAULT_H1_BOUND,
};
use galcoh::etale::{classify_etale, invariant_order_forms, order_stabilizer, OrderSpec};
use galcoh::groups::{FiniteGroup, Group, GroupAction};
use galcoh::lattices::{
    classify_predicates, cocycle_from_lattice, det_class, describe_matrix, lattice_invariants, Decision, GroupTag,
    OKLattice,
};
use galcoh::quadfields::{
    ambiguous_principal_classes, h1_units, invariant_ideal_decomposition, invariant_ideals, is_extended_from_base,
    units_exact_sequence_report, QuadField,
};
use galcoh::tensorforms::{classify_forms, GaloisFieldTower, MatrixGroupK, Tensor, TensorFamily, DEFAULT_MATRIX_BOUND};
use galcoh::Error;
use num_rational::BigRational;

use crate::codec;
use crate::input::{parse_rational, CliError, CliResult, InputFile, Line};
use crate::problem::{builtin_group, group_file, problem, LocalSpec};
use crate::report::Report;

/// Default bound on lattice searches; see the `lattices` module docs.
pub const DEFAULT_LATTICE_BOUND: u64 = 2;
/// Default maximum norm for the invariant-ideal table of `units`.
pub const DEFAULT_MAX_NORM: u64 = 100;

pub fn cocycle_values(action: &GroupAction, z: &Cocycle) -> String {
    codec::elements(action.coefficient(), z.values().iter().copied())
}

fn report_h1(report: &mut Report, action: &GroupAction, h1: &H1Set) {
    let actor = action.actor();
    report.record("actor.order", actor.order());
    report.record("actor.elements", codec::elements(actor, 0..actor.order() as u32));
    report.record("coefficient.order", action.coefficient().order());
    report.record("action.trivial", action.is_trivial());
    report.record("cocycles", h1.cocycles().len());
    report.record("classes", h1.len());
    report.record("base_point", h1.base_point());
    for c in 0..h1.len() {
        report.record(format!("class.{c}.representative"), cocycle_values(action, h1.representative(c)));
        report.record(format!("class.{c}.size"), h1.class_members(c).len());
    }
    for (i, z) in h1.cocycles().iter().enumerate() {
        let cl = h1.cocycle_class(i);
        report.witness(
            format!("cocycle.{i}"),
            format!(
                "{} | class {} | via {}",
                cocycle_values(action, z),
                cl.class,
                action.coefficient().describe(cl.witness)
            ),
        );
    }
}

pub fn h1(file: &InputFile, bound: Option<u64>, report: &mut Report) -> CliResult<()> {
    let p = problem(file)?;
    let bound = bound.map_or(DEFAULT_H1_BOUND, u128::from);
    let h1 = enumerate_h1(&p.action, bound)?;
    report_h1(report, &p.action, &h1);
    if let Some(sub) = &p.subgroup {
        let sub_action = p.action.restrict_coefficient(sub)?;
        let h1_sub = enumerate_h1(&sub_action, bound)?;
        let induced = induced_map(
            &sub_action,
            &h1_sub,
            &p.action,
            &h1,
            &CoefficientMap::inclusion(p.action.actor(), sub),
        )?;
        report.record("subgroup.order", sub.order());
        report.record("subgroup.classes", h1_sub.len());
        report.record("subgroup.induced", codec::indices(&induced.images));
        report.record("subgroup.kernel", codec::indices(&induced.kernel));
        let orbits = classifier_orbits(&p.action, sub)?;
        report.record("classifier.invariant_cosets", orbits.invariant.len());
        report.record("classifier.orbits", orbits.orbits.len());
        report.record("classifier.orbit_classes", codec::indices(&orbits.orbit_classes));
        report.record("classifier.bijective", orbits.bijective);
        let coefficient = p.action.coefficient();
        if coefficient.is_normal(&sub.embedding) {
            let conn = connecting_invariants(&p.action, sub)?;
            report.record("connecting.classes", codec::indices(&conn.classes));
            report.record("connecting.exact", conn.exact);
        }
    }
    Ok(())
}

pub fn genus(file: &InputFile, bound: Option<u64>, report: &mut Report) -> CliResult<()> {
    let p = problem(file)?;
    if p.locals.is_empty() {
        return Err(file.err(0, "genus needs at least one `local` line"));
    }
    let h1 = enumerate_h1(&p.action, bound.map_or(DEFAULT_H1_BOUND, u128::from))?;
    report_h1(report, &p.action, &h1);
    let locals: Vec<LocalMap> = p
        .locals
        .iter()
        .map(|l| match l {
            LocalSpec::Restrict(sub) => LocalMap::restriction(&p.action, sub),
            LocalSpec::Trivial => LocalMap::to_trivial(&p.action),
        })
        .collect();
    let g = genus_kernel(&p.action, &h1, &locals)?;
    for (i, k) in g.kernels.iter().enumerate() {
        report.record(format!("local.{i}.actor_order"), locals[i].target.actor().order());
        report.record(format!("local.{i}.kernel"), codec::indices(k));
    }
    report.record("genus", codec::indices(&g.genus));
    report.record("genus.size", g.genus.len());
    Ok(())
}

fn tensor_line(file: &InputFile, line: &Line, n: usize) -> CliResult<Tensor> {
    let (arity, coeffs) = line
        .value
        .split_once('|')
        .ok_or_else(|| file.err(line.no, "expected `tensor: <l> <m> | <coefficients>`"))?;
    let ar: Vec<u32> = arity
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| file.err(line.no, "arity is not a pair of integers"))?;
    let [l, m] = ar[..] else {
        return Err(file.err(line.no, "arity must be two integers `l m`"));
    };
    let coeffs: Vec<u32> = coeffs
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| file.err(line.no, "coefficients must be field-element indices"))?;
    let expected = n.checked_pow(l).and_then(|a| n.checked_pow(m).and_then(|b| a.checked_mul(b)));
    if expected != Some(coeffs.len()) {
        return Err(file.err(
            line.no,
            format!("type ({l}, {m}) on dimension {n} needs {} coefficients, got {}", expected.unwrap_or(0), coeffs.len()),
        ));
    }
    Ok(Tensor { l, m, coeffs })
}

/// Tensor file: `n: <dim>`, then `tensor: <l> <m> | <coefficients>` lines with
/// coefficients as indices into the power basis of the top field, row-major
/// over an `n^m × n^l` array.
pub fn tensor_family(file: &InputFile, tower: &GaloisFieldTower) -> CliResult<TensorFamily> {
    file.check_keys(&["n", "tensor"])?;
    let n_line = file.one("n")?;
    let n: usize = file.number(n_line)?;
    if n == 0 {
        return Err(file.err(n_line.no, "n must be at least 1"));
    }
    let mut tensors = Vec::new();
    for l in file.all("tensor") {
        let t = tensor_line(file, l, n)?;
        if let Some(&c) = t.coeffs.iter().find(|&&c| c >= tower.order()) {
            return Err(file.err(l.no, format!("coefficient {c} is not below the field order {}", tower.order())));
        }
        if let Some(&c) = t.coeffs.iter().find(|&&c| !tower.is_base(c)) {
            return Err(file.err(l.no, format!("coefficient {c} does not lie in the base field")));
        }
        tensors.push(t);
    }
    file.at(n_line, TensorFamily::new(n, tensors))
}

pub fn forms(p: u32, k_deg: u32, ext: u32, file: &InputFile, bound: Option<u64>, report: &mut Report) -> CliResult<()> {
    let tower = Arc::new(GaloisFieldTower::new(p, k_deg, ext)?);
    let fam = tensor_family(file, &tower)?;
    let bound = bound.unwrap_or(DEFAULT_MATRIX_BOUND);
    let c = classify_forms(&tower, &fam, bound)?;
    report.record("field.base_order", tower.base_order());
    report.record("field.order", tower.order());
    report.record("galois.order", ext);
    report.record("n", fam.dim());
    report.record("orbit_size", c.orbit_size);
    report.record("invariant_points", c.invariant_points);
    report.record("stabilizer.order", c.stabilizer_order);
    report.record("h1.classes", c.h1.len());
    report.record("h1.base_point", c.h1.base_point());
    report.record("forms", c.orbits.len());
    report.record("bijective", c.bijective);
    let gl = MatrixGroupK::general(tower.clone(), fam.dim(), bound)?;
    let n = fam.dim();
    for (i, o) in c.orbits.iter().enumerate() {
        report.record(format!("form.{i}.representative"), join_u32(&o.representative));
        report.record(format!("form.{i}.size"), o.size);
        report.record(format!("form.{i}.class"), o.class.class);
        report.witness(format!("form.{i}.transporter"), join_u32(&gl.decode(o.transporter)[..n * n]));
    }
    Ok(())
}

pub fn join_u32(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn units(d: i64, certify: bool, max_norm: u64, report: &mut Report) -> CliResult<()> {
    let field = QuadField::new(d)?;
    let units = field.unit_group()?;
    report.record("field", &field);
    report.record("discriminant", field.discriminant());
    report.record("real", field.is_real());
    report.record("class_number", field.class_group()?.order());
    report.record("units.torsion_order", units.torsion_order);
    report.record("units.torsion_generator", field.describe(&units.torsion_generator));
    match &units.fundamental {
        Some(eps) => {
            report.record("units.fundamental", field.describe(eps));
            report.record("units.fundamental_norm", units.fundamental_norm.unwrap_or(0));
        }
        None => report.record("units.fundamental", "none"),
    }
    let h1 = h1_units(&field)?;
    report.record("h1.class_count", h1.len());
    for c in 0..h1.len() {
        let u = field.unit_from_log(h1.representative(c))?;
        report.record(format!("h1.class.{c}"), field.describe(&u));
    }
    let amb = ambiguous_principal_classes(&field)?;
    report.record("ambiguous.ramified", join_u64(&amb.ramified));
    report.record("ambiguous.principal", amb.order());
    for (i, c) in amb.classes.iter().enumerate() {
        report.record(format!("ambiguous.class.{i}.primes"), primes_or_one(&c.primes));
        report.record(format!("ambiguous.class.{i}.h1_class"), c.class);
        if certify {
            let unit = field.unit_from_log(c.cocycle)?;
            report.witness(
                format!("ambiguous.class.{i}"),
                format!(
                    "primes {} | generator {} | unit {}",
                    primes_or_one(&c.primes),
                    codec::element(&c.generator),
                    codec::element(&unit)
                ),
            );
        }
    }
    for (primes, class) in &amb.non_principal {
        report.record(format!("ambiguous.non_principal.{}", primes_or_one(primes)), format!("ideal class {class}"));
    }
    report.record("ambiguous.bijective", amb.bijective);
    let seq = units_exact_sequence_report(&field, &amb.ramified)?;
    report.record(
        "sequence.coordinates",
        seq.coordinates.iter().map(|(p, e)| format!("{p}:{e}")).collect::<Vec<_>>().join(" "),
    );
    report.record("sequence.kernel_order", seq.kernel_order);
    for (i, v) in seq.image.iter().enumerate() {
        report.record(format!("sequence.image.{i}"), join_u32(v));
    }
    report.record("sequence.principal_vectors", seq.principal_vectors.len());
    report.record("sequence.exact", seq.exact);
    let ideals = invariant_ideals(&field, max_norm);
    let mut extended = 0;
    let mut consistent = true;
    for ideal in &ideals {
        let dec = invariant_ideal_decomposition(&field, ideal)?;
        extended += usize::from(dec.extended);
        consistent &= dec.reassembles && dec.extended == is_extended_from_base(ideal);
    }
    report.record("ideals.max_norm", max_norm);
    report.record("ideals.invariant", ideals.len());
    report.record("ideals.extended", extended);
    report.record("ideals.membership_rule", consistent);
    Ok(())
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn primes_or_one(ps: &[u64]) -> String {
    if ps.is_empty() {
        "1".into()
    } else {
        ps.iter().map(u64::to_string).collect::<Vec<_>>().join("*")
    }
}

pub struct LatticeFile {
    pub lattice: OKLattice,
    pub form: Option<Vec<Vec<BigRational>>>,
}

/// Lattice file: optional `d`, `n`, `gen` lines of comma-separated entries
/// `a b` (meaning `a + b·ω`), and optional `form` rows of a rational Gram matrix.
pub fn lattice_file(file: &InputFile, field: &QuadField) -> CliResult<LatticeFile> {
    file.check_keys(&["d", "n", "gen", "form"])?;
    if let Some(l) = file.optional("d")? {
        let d: i64 = file.number(l)?;
        if d != field.d() {
            return Err(file.err(l.no, format!("file is over d = {d} but --d is {}", field.d())));
        }
    }
    let n_line = file.one("n")?;
    let n: usize = file.number(n_line)?;
    let mut gens = Vec::new();
    for l in file.all("gen") {
        let v = codec::parse_vector(&l.value).ok_or_else(|| file.err(l.no, "entries must be `a b` rationals separated by `,`"))?;
        if v.len() != n {
            return Err(file.err(l.no, format!("vector of length {} in dimension {n}", v.len())));
        }
        gens.push(v);
    }
    let lattice = file.at(n_line, OKLattice::new(field, n, gens))?;
    let form_lines: Vec<&Line> = file.all("form").collect();
    let form = if form_lines.is_empty() {
        None
    } else {
        let mut rows = Vec::new();
        for l in &form_lines {
            let row: Vec<BigRational> = l
                .value
                .split_whitespace()
                .map(parse_rational)
                .collect::<Option<_>>()
                .ok_or_else(|| file.err(l.no, "form rows are rationals separated by spaces"))?;
            if row.len() != n {
                return Err(file.err(l.no, format!("form row of length {} in dimension {n}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(file.err(form_lines[0].no, format!("{} form rows in dimension {n}", rows.len())));
        }
        Some(rows)
    };
    Ok(LatticeFile { lattice, form })
}

pub fn lattice(
    d: i64,
    reference: Option<&InputFile>,
    target: &InputFile,
    group: &str,
    bound: u64,
    report: &mut Report,
) -> CliResult<()> {
    let field = QuadField::new(d)?;
    let l = lattice_file(target, &field)?;
    let n = l.lattice.dim();
    let (lambda, form) = match reference {
        Some(f) => {
            let r = lattice_file(f, &field)?;
            (r.lattice, r.form.or(l.form))
        }
        None => (OKLattice::standard(&field, n)?, l.form),
    };
    let tag = match group {
        "GL" => GroupTag::GL,
        "SL" => GroupTag::SL,
        "O" => GroupTag::O(form.unwrap_or_else(|| {
            (0..n)
                .map(|i| (0..n).map(|j| BigRational::from_integer((i == j).into())).collect())
                .collect()
        })),
        other => return Err(CliError::Usage(format!("unknown group `{other}` (GL, SL or O)"))),
    };
    report.record("field", &field);
    report.record("n", n);
    report.record("group", tag.name());
    report.record("bound", bound);
    report.record("reference", &lambda);
    report.record("lattice", &l.lattice);
    report.record("lattice.galois_stable", galcoh::lattices::is_galois_stable(&l.lattice)?);
    let c = match cocycle_from_lattice(&lambda, &l.lattice, tag, bound) {
        Ok(c) => c,
        Err(Error::Undecided(b)) => {
            report.record("cocycle", "undecided");
            report.undecided(b);
            return Ok(());
        }
        Err(Error::NoIsomorphismFound(why)) => {
            report.record("cocycle", "none");
            report.record("cocycle.reason", why);
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    report.record("cocycle", describe_matrix(&field, &c.value));
    report.record("cocycle.det", field.describe(&c.det()));
    let dc = det_class(&c)?;
    report.record("det_class.class", dc.class);
    report.record("det_class.classes", dc.classes);
    report.record("det_class.trivial", dc.is_trivial());
    if let Some(i) = &dc.ideal {
        report.record("det_class.ideal", i);
    }
    report.witness("cocycle", codec::matrix(&c.value));
    if let Some(phi) = &c.phi {
        report.witness("phi", codec::matrix(phi));
    }
    let inv = lattice_invariants(&l.lattice)?;
    report.record("invariants.defined", inv.defined);
    report.record("invariants.index", &inv.index);
    report.record("invariants.det_class", inv.det_class);
    let p = classify_predicates(&c, bound)?;
    let mut undecided = None;
    for (key, dec) in [("in_v", p.in_v), ("k_free", p.k_free), ("k_defined", p.k_defined)] {
        report.record(format!("predicates.{key}"), dec.as_str());
        if let Decision::Undecided { bound } = dec {
            undecided = Some(bound);
        }
    }
    report.record("representative", &p.representative);
    if let Some(b) = &p.in_v_witness {
        report.witness("in_v", codec::matrix(b));
    }
    if let Some(b) = &p.k_free_witness {
        report.witness("k_free", codec::matrix(b));
    }
    if let Some(b) = undecided {
        report.undecided(b);
    }
    Ok(())
}

pub fn etale_group(spec: &str) -> CliResult<(FiniteGroup, Option<InputFile>)> {
    if let Some(g) = builtin_group(spec) {
        return Ok((g?, None));
    }
    let file = InputFile::read(spec)?;
    Ok((group_file(&file)?, Some(file)))
}

/// Order file: `n` rows `row: <integers>` spanning the order.
pub fn order_file(file: &InputFile, n: usize) -> CliResult<OrderSpec> {
    file.check_keys(&["row"])?;
    let mut rows = Vec::new();
    for l in file.all("row") {
        let row: Vec<i64> = l
            .value
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| file.err(l.no, "rows are integers separated by spaces"))?;
        if row.len() != n {
            return Err(file.err(l.no, format!("row of length {} but --n is {n}", row.len())));
        }
        rows.push(row);
    }
    OrderSpec::new(n, rows).map_err(|e| file.err(0, e.to_string()))
}

pub fn etale(gamma: &FiniteGroup, n: usize, order: Option<&InputFile>, report: &mut Report) -> CliResult<()> {
    let c = classify_etale(gamma, n)?;
    report.record("gamma.order", gamma.order());
    report.record("gamma.generators", codec::elements(gamma, gamma.generators().iter().copied()));
    report.record("n", n);
    report.record("homomorphisms", c.hom_count);
    report.record("classes", c.classes.len());
    for (i, e) in c.classes.iter().enumerate() {
        report.record(format!("class.{i}.partition"), codec::indices(&e.orbit_partition));
        let orbits: Vec<String> = e.orbits.iter().map(|o| format!("{{{}}}", codec::indices(o))).collect();
        report.record(format!("class.{i}.orbits"), orbits.join(" "));
        report.record(format!("class.{i}.field"), e.is_field());
        report.record(format!("class.{i}.h1_class"), e.h1_class);
        report.witness(format!("class.{i}.hom"), codec::elements(&c.symmetric, e.rep.images().iter().copied()));
    }
    if let Some(f) = order {
        let spec = order_file(f, n)?;
        let stab = order_stabilizer(&spec)?;
        let forms = invariant_order_forms(gamma, &spec)?;
        report.record("order.index", spec.index());
        report.record("order.unital", spec.unital);
        report.record("order.stabilizer.order", stab.order());
        report.record(
            "order.stabilizer.elements",
            codec::elements(&c.symmetric, stab.embedding.iter().copied()),
        );
        let transitive = galcoh::etale::transitivity_obstruction(&spec).map(|b| !b)?;
        report.record("order.stabilizer.transitive", transitive);
        report.record("order.forms", codec::indices(&forms.classes));
        report.record("order.contains_field", forms.contains_field());
        report.record("order.obstruction", !transitive);
    }
    Ok(())
}
