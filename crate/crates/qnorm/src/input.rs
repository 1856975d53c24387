//! Inclusion files: group inclusions `H ≤ G` and matrix inclusions
//! `B ⊆ N ⊆ M`, both in TOML.

use std::fmt;

use num_complex::Complex64;
use qnorm_core::group::{FiniteTable, FpGroup, FreeGroup};
use qnorm_core::vn::{AlgebraElement, MultiMatrixAlgebra, SubalgebraHandle, Tolerances, WitnessPair};
use qnorm_core::{GroupDescriptor, GroupElement, SubgroupSpec, Word};
use serde::Deserialize;
use toml::Spanned;

/// A rejected input, located by field and, when known, line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for InputError {}

struct Source<'a>(&'a str);

impl Source<'_> {
    fn line_of(&self, offset: usize) -> usize {
        self.0[..offset.min(self.0.len())].bytes().filter(|&b| b == b'\n').count() + 1
    }

    fn error<T>(&self, field: impl Into<String>, span: Option<&Spanned<T>>, message: impl Into<String>) -> InputError {
        InputError { field: field.into(), line: span.map(|s| self.line_of(s.span().start)), message: message.into() }
    }

    fn bare(&self, field: impl Into<String>, message: impl Into<String>) -> InputError {
        InputError { field: field.into(), line: None, message: message.into() }
    }

    fn parse<T: for<'de> Deserialize<'de>>(&self) -> Result<T, InputError> {
        toml::from_str(self.0).map_err(|e| InputError {
            field: "document".into(),
            line: e.span().map(|s| self.line_of(s.start)),
            message: e.message().trim().replace('\n', "; "),
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    family: Spanned<String>,
    #[serde(default)]
    generators: Vec<Spanned<String>>,
    #[serde(default)]
    relators: Vec<Spanned<String>>,
    #[serde(default)]
    elements: Vec<Spanned<String>>,
    #[serde(default)]
    table: Vec<Vec<Spanned<String>>>,
    subgroup_generators: Option<Vec<Spanned<String>>>,
    subgroup: Option<Spanned<String>>,
    generator_window: Option<Spanned<i64>>,
    #[serde(default)]
    probes: Vec<Spanned<String>>,
    radius: Option<usize>,
    left: Option<Box<GroupDoc>>,
    right: Option<Box<GroupDoc>>,
}

/// A parsed group inclusion.
#[derive(Clone, Debug)]
pub struct GroupInclusion {
    pub group: GroupDescriptor,
    pub subgroup: SubgroupSpec,
    pub probes: Vec<GroupElement>,
    pub radius: Option<usize>,
}

pub fn parse_group_file(text: &str) -> Result<GroupInclusion, InputError> {
    let src = Source(text);
    let doc: GroupDoc = src.parse()?;
    let (group, subgroup) = build_inclusion(&src, &doc, "")?;
    let probes = doc
        .probes
        .iter()
        .enumerate()
        .map(|(i, p)| element_field(&src, &group, p, &format!("probes[{i}]")))
        .collect::<Result<_, _>>()?;
    Ok(GroupInclusion { group, subgroup, probes, radius: doc.radius })
}

fn canonical_family(name: &str) -> Option<&'static str> {
    Some(match name.to_ascii_lowercase().as_str() {
        "freegroup" | "free" => "FreeGroup",
        "fpgroup" | "fp" => "FpGroup",
        "finitetable" | "table" | "finite" => "FiniteTable",
        "shiftextension" | "shift" => "ShiftExtension",
        "directproduct" | "product" => "DirectProduct",
        _ => return None,
    })
}

fn build_inclusion(src: &Source, doc: &GroupDoc, prefix: &str) -> Result<(GroupDescriptor, SubgroupSpec), InputError> {
    let field = |name: &str| format!("{prefix}{name}");
    let family = canonical_family(doc.family.get_ref())
        .ok_or_else(|| src.error(field("family"), Some(&doc.family), format!("unknown family `{}`", doc.family.get_ref())))?;
    let forbid = |present: bool, name: &str| -> Result<(), InputError> {
        if present {
            Err(src.bare(field(name), format!("not used by the {family} family")))
        } else {
            Ok(())
        }
    };
    forbid(!doc.relators.is_empty() && family != "FpGroup", "relators")?;
    forbid(doc.generator_window.is_some() && family != "ShiftExtension", "generator_window")?;
    forbid((!doc.elements.is_empty() || !doc.table.is_empty()) && family != "FiniteTable", "table")?;
    forbid((doc.left.is_some() || doc.right.is_some()) && family != "DirectProduct", "left")?;
    if !prefix.is_empty() {
        forbid(!doc.probes.is_empty(), "probes")?;
        forbid(doc.radius.is_some(), "radius")?;
    }

    let group = match family {
        "FreeGroup" => {
            let names = generator_names(src, &doc.generators, &field("generators"))?;
            let ids = (0..names.len() as i64).collect();
            GroupDescriptor::Free(FreeGroup::new(ids, names).map_err(|e| src.bare(field("generators"), e.to_string()))?)
        }
        "FpGroup" => {
            let names = generator_names(src, &doc.generators, &field("generators"))?;
            let mut relators = Vec::new();
            for (i, r) in doc.relators.iter().enumerate() {
                relators.push(parse_word(r.get_ref(), &names).map_err(|m| src.error(field(&format!("relators[{i}]")), Some(r), m))?);
            }
            GroupDescriptor::Fp(FpGroup::new(names, relators).map_err(|e| src.bare(field("relators"), e.to_string()))?)
        }
        "FiniteTable" => build_table(src, doc, prefix)?,
        "ShiftExtension" => {
            let window = doc.generator_window.as_ref().map(|w| *w.get_ref()).unwrap_or(3);
            if window < 0 {
                return Err(src.error(field("generator_window"), doc.generator_window.as_ref(), "must be non-negative"));
            }
            GroupDescriptor::shift_extension(window)
        }
        _ => {
            let (Some(l), Some(r)) = (&doc.left, &doc.right) else {
                return Err(src.bare(field("left"), "a DirectProduct needs [left] and [right] tables"));
            };
            forbid(doc.subgroup_generators.is_some() || doc.subgroup.is_some(), "subgroup_generators")?;
            let (g1, h1) = build_inclusion(src, l, &field("left."))?;
            let (g2, h2) = build_inclusion(src, r, &field("right."))?;
            let g = GroupDescriptor::product(g1, g2);
            let h = SubgroupSpec::product(&g, h1, h2);
            return Ok((g, h));
        }
    };

    let subgroup = match (&doc.subgroup_generators, &doc.subgroup) {
        (Some(_), Some(s)) => {
            return Err(src.error(field("subgroup"), Some(s), "give either subgroup or subgroup_generators"));
        }
        (None, Some(s)) => {
            let n = s
                .get_ref()
                .strip_prefix('K')
                .and_then(|n| n.parse::<i64>().ok())
                .filter(|_| family == "ShiftExtension")
                .ok_or_else(|| src.error(field("subgroup"), Some(s), "expected K<n> on a ShiftExtension"))?;
            SubgroupSpec::tail(&group, n).map_err(|e| src.error(field("subgroup"), Some(s), e.to_string()))?
        }
        (Some(gens), None) => {
            let elems = gens
                .iter()
                .enumerate()
                .map(|(i, w)| element_field(src, &group, w, &field(&format!("subgroup_generators[{i}]"))))
                .collect::<Result<Vec<_>, _>>()?;
            SubgroupSpec::generated(&group, &elems).map_err(|e| src.bare(field("subgroup_generators"), e.to_string()))?
        }
        (None, None) => return Err(src.bare(field("subgroup_generators"), "missing subgroup")),
    };
    Ok((group, subgroup))
}

fn generator_names(src: &Source, gens: &[Spanned<String>], field: &str) -> Result<Vec<String>, InputError> {
    if gens.is_empty() {
        return Err(src.bare(field, "at least one generator is required"));
    }
    for (i, g) in gens.iter().enumerate() {
        let name = g.get_ref();
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(src.error(format!("{field}[{i}]"), Some(g), format!("invalid generator name `{name}`")));
        }
        if gens[..i].iter().any(|h| h.get_ref() == name) {
            return Err(src.error(format!("{field}[{i}]"), Some(g), format!("repeated generator `{name}`")));
        }
    }
    Ok(gens.iter().map(|g| g.get_ref().clone()).collect())
}

fn build_table(src: &Source, doc: &GroupDoc, prefix: &str) -> Result<GroupDescriptor, InputError> {
    let field = |name: &str| format!("{prefix}{name}");
    let names: Vec<String> = doc.elements.iter().map(|e| e.get_ref().clone()).collect();
    if names.is_empty() {
        return Err(src.bare(field("elements"), "a FiniteTable needs element names"));
    }
    let index = |s: &Spanned<String>, f: String| {
        names.iter().position(|n| n == s.get_ref()).ok_or_else(|| src.error(f, Some(s), format!("unknown element `{}`", s.get_ref())))
    };
    let mut rows = Vec::with_capacity(doc.table.len());
    for (i, row) in doc.table.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            r.push(index(cell, field(&format!("table[{i}][{j}]")))?);
        }
        rows.push(r);
    }
    let gens = if doc.generators.is_empty() {
        None
    } else {
        Some(
            doc.generators
                .iter()
                .enumerate()
                .map(|(i, g)| index(g, field(&format!("generators[{i}]"))))
                .collect::<Result<Vec<_>, _>>()?,
        )
    };
    FiniteTable::new(names, rows, gens)
        .map(GroupDescriptor::FiniteTable)
        .map_err(|e| src.bare(field("table"), e.to_string()))
}

fn element_field(src: &Source, g: &GroupDescriptor, s: &Spanned<String>, field: &str) -> Result<GroupElement, InputError> {
    parse_element(g, s.get_ref()).map_err(|m| src.error(field, Some(s), m))
}

fn split_power(token: &str) -> Result<(&str, i64), String> {
    match token.split_once('^') {
        None => Ok((token, 1)),
        Some((base, exp)) => {
            let k = exp.trim().parse::<i64>().map_err(|_| format!("bad exponent in `{token}`"))?;
            Ok((base.trim(), k))
        }
    }
}

fn tokens(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|t| !t.is_empty())
}

/// A word over named generators, e.g. `a^2 b^-1 a`.
pub fn parse_word(s: &str, names: &[String]) -> Result<Word, String> {
    let mut powers = Vec::new();
    for token in tokens(s) {
        if token == "1" {
            continue;
        }
        let (base, k) = split_power(token)?;
        let g = names.iter().position(|n| n == base).ok_or_else(|| format!("unknown generator `{base}`"))?;
        powers.push((g as i64, k));
    }
    Ok(Word::from_powers(&powers))
}

fn power(g: &GroupDescriptor, x: &GroupElement, k: i64) -> Result<GroupElement, String> {
    let base = if k < 0 { g.invert(x).map_err(|e| e.to_string())? } else { x.clone() };
    let mut out = g.identity();
    for _ in 0..k.unsigned_abs() {
        out = g.multiply(&out, &base).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

fn split_pair(s: &str) -> Option<(&str, &str)> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

/// An element written in the notation of its family: words for free and
/// finitely presented groups, `g<i>` and `t` for the shift extension,
/// element names for tables and `(x, y)` for products.
pub fn parse_element(g: &GroupDescriptor, s: &str) -> Result<GroupElement, String> {
    if let GroupDescriptor::Product(a, b) = g {
        let (x, y) = split_pair(s).ok_or_else(|| format!("expected `(x, y)`, found `{s}`"))?;
        return Ok(GroupElement::pair(parse_element(a, x)?, parse_element(b, y)?));
    }
    let mut out = g.identity();
    for token in tokens(s) {
        let (base, k) = split_power(token)?;
        let table_name = matches!(g, GroupDescriptor::FiniteTable(t) if t.index_of(base).is_some());
        if base == "1" && !table_name {
            continue;
        }
        let atom = match g {
            GroupDescriptor::Free(f) => {
                let i = f.names().iter().position(|n| n == base).ok_or_else(|| format!("unknown generator `{base}`"))?;
                GroupElement::Word(Word::gen(f.ids()[i]))
            }
            GroupDescriptor::Fp(fp) => {
                let i = fp.names().iter().position(|n| n == base).ok_or_else(|| format!("unknown generator `{base}`"))?;
                GroupElement::Word(Word::gen(i as i64))
            }
            GroupDescriptor::Shift(_) => match base {
                "t" => GroupElement::shift(Word::identity(), 1),
                _ => {
                    let i = base
                        .strip_prefix('g')
                        .and_then(|i| i.trim_start_matches('_').parse::<i64>().ok())
                        .ok_or_else(|| format!("expected t or g<i>, found `{base}`"))?;
                    GroupElement::shift(Word::gen(i), 0)
                }
            },
            GroupDescriptor::FiniteTable(t) => {
                GroupElement::Table(t.index_of(base).ok_or_else(|| format!("unknown element `{base}`"))?)
            }
            GroupDescriptor::Product(..) => unreachable!(),
        };
        let p = power(g, &atom, k)?;
        out = g.multiply(&out, &p).map_err(|e| e.to_string())?;
    }
    g.normalize(&out).map_err(|e| e.to_string())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Complex([f64; 2]),
    Real(f64),
}

type MatrixDoc = Vec<Vec<Entry>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    x: Vec<MatrixDoc>,
    y: Vec<MatrixDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixInclusionDoc {
    blocks: Spanned<Vec<usize>>,
    weights: Spanned<Vec<f64>>,
    #[serde(default)]
    subalgebra_generators: Vec<Spanned<Vec<MatrixDoc>>>,
    intermediate_generators: Option<Vec<Spanned<Vec<MatrixDoc>>>>,
    witness_pairs: Option<Vec<Spanned<PairDoc>>>,
    seed: Option<u64>,
    tolerances: Option<Spanned<std::collections::BTreeMap<String, f64>>>,
}

/// A parsed matrix inclusion `B ⊆ N ⊆ M`; `N = B` when no intermediate
/// generators are given.
#[derive(Clone, Debug)]
pub struct MatrixInclusion {
    pub m: MultiMatrixAlgebra,
    pub b: SubalgebraHandle,
    pub n: SubalgebraHandle,
    pub witness_pairs: Option<Vec<WitnessPair>>,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
}

fn element_from_doc(m: &MultiMatrixAlgebra, blocks: &[MatrixDoc]) -> Result<AlgebraElement, String> {
    if blocks.len() != m.dims().len() {
        return Err(format!("expected {} blocks, found {}", m.dims().len(), blocks.len()));
    }
    let mut out = Vec::with_capacity(blocks.len());
    for (k, (rows, &n)) in blocks.iter().zip(m.dims()).enumerate() {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(format!("block {k} must be {n}x{n}"));
        }
        out.push(qnorm_core::vn::CMatrix::from_fn(n, n, |i, j| match rows[i][j] {
            Entry::Complex([re, im]) => Complex64::new(re, im),
            Entry::Real(re) => Complex64::new(re, 0.0),
        }));
    }
    m.from_blocks(out).map_err(|e| e.to_string())
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixInclusion, InputError> {
    let src = Source(text);
    let doc: MatrixInclusionDoc = src.parse()?;
    let m = MultiMatrixAlgebra::new(doc.blocks.get_ref(), doc.weights.get_ref())
        .map_err(|e| src.error("weights", Some(&doc.weights), e.to_string()))?;
    let elements = |list: &[Spanned<Vec<MatrixDoc>>], name: &str| -> Result<Vec<AlgebraElement>, InputError> {
        list.iter()
            .enumerate()
            .map(|(i, x)| element_from_doc(&m, x.get_ref()).map_err(|e| src.error(format!("{name}[{i}]"), Some(x), e)))
            .collect()
    };
    let b_gens = elements(&doc.subalgebra_generators, "subalgebra_generators")?;
    let b = SubalgebraHandle::closure(&m, &b_gens);
    let n = match &doc.intermediate_generators {
        None => b.clone(),
        Some(list) => {
            let mut gens = b_gens.clone();
            gens.extend(elements(list, "intermediate_generators")?);
            SubalgebraHandle::closure(&m, &gens)
        }
    };
    let witness_pairs = match &doc.witness_pairs {
        None => None,
        Some(list) => Some(
            list.iter()
                .enumerate()
                .map(|(i, p)| {
                    let pair = p.get_ref();
                    let f = format!("witness_pairs[{i}]");
                    let x = element_from_doc(&m, &pair.x).map_err(|e| src.error(format!("{f}.x"), Some(p), e))?;
                    let y = element_from_doc(&m, &pair.y).map_err(|e| src.error(format!("{f}.y"), Some(p), e))?;
                    Ok(WitnessPair { x, y })
                })
                .collect::<Result<Vec<_>, InputError>>()?,
        ),
    };
    let mut tolerances = Tolerances::default();
    if let Some(t) = &doc.tolerances {
        for (key, &value) in t.get_ref() {
            tolerances.set(key, value).map_err(|e| src.error(format!("tolerances.{key}"), Some(t), e.to_string()))?;
        }
    }
    Ok(MatrixInclusion { m, b, n, witness_pairs, seed: doc.seed, tolerances })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_elements() {
        let g = GroupDescriptor::shift_extension(3);
        let x = parse_element(&g, "g0 t").unwrap();
        assert_eq!(x, GroupElement::shift(Word::gen(0), 1));
        let y = parse_element(&g, "t g0 t^-1").unwrap();
        assert_eq!(y, GroupElement::shift(Word::gen(1), 0));
        assert_eq!(parse_element(&g, "g-2^2").unwrap(), GroupElement::shift(Word::from_powers(&[(-2, 2)]), 0));
        assert!(parse_element(&g, "h1").is_err());
    }

    #[test]
    fn free_and_product_elements() {
        let g = GroupDescriptor::free(2);
        assert_eq!(parse_element(&g, "a b b^-1").unwrap(), GroupElement::Word(Word::gen(0)));
        assert_eq!(parse_element(&g, "1").unwrap(), g.identity());
        let p = GroupDescriptor::product(g.clone(), GroupDescriptor::shift_extension(2));
        let e = parse_element(&p, "(a^2, t^-1)").unwrap();
        assert_eq!(e, GroupElement::pair(GroupElement::Word(Word::from_powers(&[(0, 2)])), GroupElement::shift(Word::identity(), -1)));
    }

    #[test]
    fn group_file_errors_carry_lines() {
        let text = "family = \"FreeGroup\"\ngenerators = [\"a\", \"b\"]\nsubgroup_generators = [\"a\", \"c\"]\n";
        let e = parse_group_file(text).unwrap_err();
        assert_eq!(e.line, Some(3));
        assert_eq!(e.field, "subgroup_generators[1]");
        let e = parse_group_file("family = \"FreeGroup\"\nbogus = 1\n").unwrap_err();
        assert_eq!(e.field, "document");
        assert!(e.message.contains("bogus"), "{}", e.message);
        let e = parse_group_file("family = \"Lie\"\n").unwrap_err();
        assert_eq!(e.field, "family");
    }

    #[test]
    fn table_and_product_files() {
        let text = r#"
family = "FiniteTable"
elements = ["e", "s"]
table = [["e", "s"], ["s", "e"]]
subgroup_generators = ["e"]
"#;
        let inc = parse_group_file(text).unwrap();
        assert_eq!(inc.group.family(), "FiniteTable");
        let text = r#"
family = "DirectProduct"
probes = ["(t^-1, a)"]
[left]
family = "ShiftExtension"
subgroup = "K0"
[right]
family = "FreeGroup"
generators = ["a", "b"]
subgroup_generators = ["a"]
"#;
        let inc = parse_group_file(text).unwrap();
        assert_eq!(inc.group.family(), "DirectProduct");
        assert_eq!(inc.probes.len(), 1);
    }

    #[test]
    fn matrix_file() {
        let text = r#"
blocks = [2]
weights = [1.0]
subalgebra_generators = [[[[1, 0], [0, 0]]]]
witness_pairs = [{ x = [[[0, [1, 0]], [0, 0]]], y = [[[0, 0], [1, 0]]] }]
tolerances = { lemma = 1e-8 }
"#;
        let inc = parse_matrix_file(text).unwrap();
        assert!(inc.m.was_rescaled());
        assert_eq!(inc.b.dim(), 2);
        assert_eq!(inc.witness_pairs.unwrap().len(), 1);
        assert_eq!(inc.tolerances.lemma, 1e-8);
        let e = parse_matrix_file("blocks = [2]\nweights = [0.5]\nsubalgebra_generators = [[[[1]]]]\n").unwrap_err();
        assert_eq!(e.field, "subalgebra_generators[0]");
        assert_eq!(e.line, Some(3));
    }
}
