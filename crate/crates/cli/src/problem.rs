//! Group and action problem files.
//!
//! ```text
//! actor: C2                     # or actor.degree + actor.gen lines
//! coefficient.degree: 3
//! coefficient.gen: (0 1 2)
//! coefficient.gen: (0 1)
//! action: conjugation           # trivial (default) | conjugation | images
//! action.conjugator: (1 2)      # one per actor generator
//! subgroup.gen: (0 1 2)         # optional: a Γ-stable subgroup of the coefficient
//! local: restrict (0 1)         # genus only: restrict | trivial
//! ```
//!
//! With `action: images`, each `action.images` line lists, separated by `;`,
//! the images of the coefficient generators under one actor generator.
//! Builtin group names are `trivial`, `C<n>` and `S<n>`.

use galcoh::groups::{FiniteGroup, GroupAction, Perm, Subgroup};

use crate::input::{CliResult, InputFile, Line};

pub fn builtin_group(name: &str) -> Option<galcoh::Result<FiniteGroup>> {
    let name = name.trim();
    if name == "trivial" || name == "1" {
        return Some(Ok(FiniteGroup::trivial(1)));
    }
    let (kind, n) = name.split_at(1);
    let n: usize = n.parse().ok().filter(|&n| n >= 1)?;
    match kind {
        "C" => Some(Ok(FiniteGroup::cyclic(n))),
        "S" => Some(FiniteGroup::symmetric(n)),
        _ => None,
    }
}

fn perm(file: &InputFile, line: &Line, degree: usize, text: &str) -> CliResult<Perm> {
    file.at(line, Perm::parse_cycles(degree, text))
}

/// A group given either as `<prefix>: <builtin>` or as `<prefix>.degree`
/// plus `<prefix>.gen` lines; an empty prefix means `degree` and `gen`.
pub fn group(file: &InputFile, prefix: &str) -> CliResult<FiniteGroup> {
    let key = |s: &str| if prefix.is_empty() { s.to_string() } else { format!("{prefix}.{s}") };
    let name_key = if prefix.is_empty() { "group" } else { prefix };
    if let Some(line) = file.optional(name_key)? {
        if file.optional(&key("degree"))?.is_some() || file.all(&key("gen")).next().is_some() {
            return Err(file.err(line.no, format!("`{name_key}` conflicts with explicit generators")));
        }
        return match builtin_group(&line.value) {
            Some(g) => file.at(line, g),
            None => Err(file.err(line.no, format!("unknown group `{}` (use trivial, C<n> or S<n>)", line.value))),
        };
    }
    let degree_line = file.one(&key("degree"))?;
    let degree: usize = file.number(degree_line)?;
    if degree == 0 {
        return Err(file.err(degree_line.no, "degree must be at least 1"));
    }
    let gen_lines: Vec<&Line> = file.all(&key("gen")).collect();
    let gens = gen_lines
        .iter()
        .map(|l| perm(file, l, degree, &l.value))
        .collect::<CliResult<Vec<_>>>()?;
    let g = file.at(degree_line, FiniteGroup::from_generators(degree, &gens))?;
    if g.generators().len() != gens.len() {
        return Err(file.err(gen_lines[gens.len() - 1].no, "generator repeated on consecutive lines"));
    }
    Ok(g)
}

/// A group file: `group: <builtin>`, or `degree` plus `gen` lines.
pub fn group_file(file: &InputFile) -> CliResult<FiniteGroup> {
    file.check_keys(&["group", "degree", "gen"])?;
    group(file, "")
}

pub enum LocalSpec {
    Restrict(Subgroup),
    Trivial,
}

pub struct Problem {
    pub action: GroupAction,
    pub subgroup: Option<Subgroup>,
    pub locals: Vec<LocalSpec>,
}

pub const PROBLEM_KEYS: &[&str] = &[
    "actor",
    "actor.degree",
    "actor.gen",
    "coefficient",
    "coefficient.degree",
    "coefficient.gen",
    "action",
    "action.conjugator",
    "action.images",
    "subgroup.gen",
    "local",
];

pub fn problem(file: &InputFile) -> CliResult<Problem> {
    file.check_keys(PROBLEM_KEYS)?;
    let actor = group(file, "actor")?;
    let coefficient = group(file, "coefficient")?;
    let kind = file.optional("action")?;
    let actor_gens = actor.generators().len();
    let expect_lines = |key: &str, lines: &[&Line], at: &Line| -> CliResult<()> {
        if lines.len() != actor_gens {
            return Err(file.err(
                at.no,
                format!("{} `{key}` lines for {actor_gens} actor generators", lines.len()),
            ));
        }
        Ok(())
    };
    let cdeg = coefficient.degree();
    let action = match kind.map(|l| (l, l.value.as_str())) {
        None | Some((_, "trivial")) => GroupAction::trivial(actor.clone(), coefficient.clone()),
        Some((at, "conjugation")) => {
            let lines: Vec<&Line> = file.all("action.conjugator").collect();
            expect_lines("action.conjugator", &lines, at)?;
            let conj = lines.iter().map(|l| perm(file, l, cdeg, &l.value)).collect::<CliResult<Vec<_>>>()?;
            file.at(at, GroupAction::by_conjugation(actor.clone(), coefficient.clone(), &conj))?
        }
        Some((at, "images")) => {
            let lines: Vec<&Line> = file.all("action.images").collect();
            expect_lines("action.images", &lines, at)?;
            let mut images = Vec::with_capacity(lines.len());
            for l in &lines {
                let perms = l
                    .value
                    .split(';')
                    .map(|t| perm(file, l, cdeg, t))
                    .collect::<CliResult<Vec<_>>>()?;
                if perms.len() != coefficient.generators().len() {
                    return Err(file.err(
                        l.no,
                        format!("{} images for {} coefficient generators", perms.len(), coefficient.generators().len()),
                    ));
                }
                images.push(perms);
            }
            file.at(at, GroupAction::from_generator_images(actor.clone(), coefficient.clone(), &images))?
        }
        Some((at, other)) => {
            return Err(file.err(at.no, format!("unknown action `{other}` (trivial, conjugation or images)")));
        }
    };

    let sub_lines: Vec<&Line> = file.all("subgroup.gen").collect();
    let subgroup = match sub_lines.first() {
        None => None,
        Some(first) => {
            let perms = sub_lines
                .iter()
                .map(|l| perm(file, l, cdeg, &l.value))
                .collect::<CliResult<Vec<_>>>()?;
            let sub = file.at(first, coefficient.subgroup_from_perms(&perms))?;
            if !action.stabilizes(&sub.embedding) {
                return Err(file.err(first.no, "subgroup is not stable under the action"));
            }
            Some(sub)
        }
    };

    let mut locals = Vec::new();
    for l in file.all("local") {
        let (word, rest) = l.value.split_once(char::is_whitespace).unwrap_or((l.value.as_str(), ""));
        match word {
            "trivial" if rest.trim().is_empty() => locals.push(LocalSpec::Trivial),
            "restrict" => {
                let perms = rest
                    .split(';')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| perm(file, l, actor.degree(), t))
                    .collect::<CliResult<Vec<_>>>()?;
                locals.push(LocalSpec::Restrict(file.at(l, actor.subgroup_from_perms(&perms))?));
            }
            _ => return Err(file.err(l.no, "expected `local: trivial` or `local: restrict <perm>; …`")),
        }
    }
    Ok(Problem {
        action,
        subgroup,
        locals,
    })
}
