use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use catlift::chaincx::{FiniteComplex, Fp, Matrix};
use catlift::cycops::{
    associative, cyclic_associative, terminal, terminal_cyclic, two_element, two_element_cyclic, validate_cyclic,
    validate_operad, Sym, TruncatedCyclicOperad, TruncatedOperad, TwoElementKind,
};
use catlift::fincat::constructions::{
    codiscrete, discrete, empty, ordinal, parallel_pair, terminal as point, walking_arrow, walking_iso,
};
use catlift::fincat::{CatFunctor, CategoryBuilder, FiniteCategory, FiniteGroup};
use catlift::invcat::InvolutiveCategory;
use catlift::nabla::{build_nabla, check_simplicial, Nabla, SimplexCategory};
use catlift::semidirect::GroupAction;
use catlift::setval::SetDiagram;
use catlift::Error;

use super::syntax::{Block, Document, Entry};

/// Whether a load failure is bad input or data that fails its axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    Input,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadError {
    pub line: usize,
    pub message: String,
    pub failure: Failure,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for LoadError {}

fn input(line: usize, message: impl Into<String>) -> LoadError {
    LoadError { line, message: message.into(), failure: Failure::Input }
}

fn from_core(line: usize, block: &Block, e: Error) -> LoadError {
    let failure = match e {
        Error::Invalid { .. } => Failure::Invalid,
        _ => Failure::Input,
    };
    LoadError { line, message: format!("{} `{}`: {e}", block.kind, block.name), failure }
}

/// A complex over the prime field given by `p`, kept as integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexData {
    pub p: u32,
    pub lo: i32,
    pub dims: Vec<usize>,
    /// Row-major differentials `d^{lo+k}`.
    pub diffs: Vec<Vec<i64>>,
}

macro_rules! with_prime {
    ($p:expr, $f:ident, $($arg:expr),*) => {
        match $p {
            2 => Some($f::<Fp<2>>($($arg),*)),
            3 => Some($f::<Fp<3>>($($arg),*)),
            5 => Some($f::<Fp<5>>($($arg),*)),
            7 => Some($f::<Fp<7>>($($arg),*)),
            11 => Some($f::<Fp<11>>($($arg),*)),
            13 => Some($f::<Fp<13>>($($arg),*)),
            _ => None,
        }
    };
}
pub(crate) use with_prime;

/// Primes the command line can compute over.
pub const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

impl ComplexData {
    pub fn build<F: catlift::chaincx::Field>(&self) -> catlift::Result<FiniteComplex<F>> {
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, e)| {
                Matrix::from_vec(self.dims[k + 1], self.dims[k], e.iter().map(|&v| F::from_i64(v)).collect())
                    .expect("shape checked on load")
            })
            .collect();
        FiniteComplex::new(self.lo, self.dims.clone(), diffs)
    }
}

#[derive(Clone, Debug)]
pub struct OperadData {
    pub operad: TruncatedOperad,
    pub cyclic: Option<TruncatedCyclicOperad>,
}

/// A simplicial or real simplicial set with its truncation level.
#[derive(Clone, Debug)]
pub struct TruncatedData {
    pub dim: usize,
    pub diagram: Arc<SetDiagram>,
}

/// Every block of a document, resolved and validated.
#[derive(Clone, Debug, Default)]
pub struct Loaded {
    pub categories: BTreeMap<String, Arc<FiniteCategory>>,
    pub functors: BTreeMap<String, CatFunctor>,
    pub groups: BTreeMap<String, FiniteGroup>,
    pub actions: BTreeMap<String, GroupAction>,
    pub involutions: BTreeMap<String, InvolutiveCategory>,
    pub diagrams: BTreeMap<String, Arc<SetDiagram>>,
    pub ssets: BTreeMap<String, TruncatedData>,
    pub rssets: BTreeMap<String, TruncatedData>,
    pub operads: BTreeMap<String, OperadData>,
    pub complexes: BTreeMap<String, ComplexData>,
    simplex: HashMap<usize, SimplexCategory>,
    nabla: HashMap<usize, Nabla>,
}

fn expect_len(e: &Entry, n: usize, usage: &str) -> Result<(), LoadError> {
    if e.tokens.len() != n {
        return Err(input(e.line, format!("expected `{usage}`, found `{}`", e.text())));
    }
    Ok(())
}

fn number<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, LoadError> {
    s.parse().map_err(|_| input(line, format!("`{s}` is not a valid {what}")))
}

fn required<'a>(b: &'a Block, key: &str) -> Result<&'a str, LoadError> {
    b.param(key).ok_or_else(|| input(b.line, format!("{} `{}` needs `{key}=`", b.kind, b.name)))
}

fn no_entries(b: &Block) -> Result<(), LoadError> {
    match b.entries.first() {
        Some(e) => Err(input(e.line, format!("{} `{}` is built in and takes no entries", b.kind, b.name))),
        None => Ok(()),
    }
}

fn permutation(line: usize, s: &str, n: usize) -> Result<Vec<usize>, LoadError> {
    let p: Vec<usize> =
        if s == "-" { vec![] } else { s.split('.').map(|x| number(line, x, "permutation entry")).collect::<Result<_, _>>()? };
    let mut seen = vec![false; n];
    if p.len() != n || p.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(input(line, format!("`{s}` is not a permutation of 0..{n}")));
    }
    Ok(p)
}

impl Loaded {
    pub fn category(&self, line: usize, name: &str) -> Result<&Arc<FiniteCategory>, LoadError> {
        self.categories.get(name).ok_or_else(|| input(line, format!("unknown category `{name}`")))
    }

    pub fn simplex(&mut self, dim: usize) -> &SimplexCategory {
        self.simplex.entry(dim).or_insert_with(|| SimplexCategory::new(dim))
    }

    pub fn nabla(&mut self, dim: usize) -> catlift::Result<&Nabla> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.nabla.entry(dim) {
            e.insert(build_nabla(dim)?);
        }
        Ok(&self.nabla[&dim])
    }

    pub fn from_document(doc: &Document) -> Result<Loaded, LoadError> {
        let mut out = Loaded::default();
        let of_kind = |k: &'static str| doc.blocks.iter().filter(move |b| b.kind == k);
        for b in of_kind("category") {
            let c = load_category(b)?;
            out.categories.insert(b.name.clone(), Arc::new(c));
        }
        for b in of_kind("group") {
            out.groups.insert(b.name.clone(), load_group(b)?);
        }
        for b in of_kind("functor") {
            let f = out.load_functor(b)?;
            out.functors.insert(b.name.clone(), f);
        }
        for b in of_kind("action") {
            let a = out.load_action(b)?;
            out.actions.insert(b.name.clone(), a);
        }
        for b in of_kind("involution") {
            let i = out.load_involution(b)?;
            out.involutions.insert(b.name.clone(), i);
        }
        for b in of_kind("diagram") {
            let shape = out.category(b.line, required(b, "shape")?)?.clone();
            let d = load_diagram(b, shape, |n| n.to_string())?;
            out.diagrams.insert(b.name.clone(), Arc::new(d));
        }
        for b in of_kind("sset") {
            let dim = number(b.line, required(b, "dim")?, "dimension")?;
            let delta = out.simplex(dim).clone();
            let d = load_diagram(b, delta.opposite().clone(), |n| n.to_string())?;
            check_simplicial(&delta, &d).map_err(|e| from_core(b.line, b, e))?;
            out.ssets.insert(b.name.clone(), TruncatedData { dim, diagram: Arc::new(d) });
        }
        for b in of_kind("rsset") {
            let dim = number(b.line, required(b, "dim")?, "dimension")?;
            let shape = out.nabla(dim).map_err(|e| from_core(b.line, b, e))?.opposite.clone();
            let d = load_diagram(b, shape, |n| n.replace(",sigma)", ",σ)"))?;
            out.rssets.insert(b.name.clone(), TruncatedData { dim, diagram: Arc::new(d) });
        }
        for b in of_kind("operad") {
            out.operads.insert(b.name.clone(), load_operad(b)?);
        }
        for b in of_kind("complex") {
            out.complexes.insert(b.name.clone(), load_complex(b)?);
        }
        Ok(out)
    }

    fn load_functor(&self, b: &Block) -> Result<CatFunctor, LoadError> {
        let dom = self.category(b.line, required(b, "dom")?)?.clone();
        let cod = self.category(b.line, required(b, "cod")?)?.clone();
        let (mut objs, mut mors) = (Vec::new(), Vec::new());
        for e in &b.entries {
            match e.tokens[0].as_str() {
                "object" => {
                    expect_len(e, 3, "object <source> <image>")?;
                    objs.push((e.tokens[1].as_str(), e.tokens[2].as_str()));
                }
                "morphism" => {
                    expect_len(e, 3, "morphism <source> <image>")?;
                    mors.push((e.tokens[1].as_str(), e.tokens[2].as_str()));
                }
                other => return Err(input(e.line, format!("unknown functor entry `{other}`"))),
            }
        }
        CatFunctor::from_names(dom, cod, &objs, &mors).map_err(|e| from_core(b.line, b, e))
    }

    fn load_action(&self, b: &Block) -> Result<GroupAction, LoadError> {
        let gname = required(b, "group")?;
        let group = self.groups.get(gname).ok_or_else(|| input(b.line, format!("unknown group `{gname}`")))?.clone();
        let c = self.category(b.line, required(b, "category")?)?.clone();
        let mut per: Vec<(Vec<(&str, &str)>, Vec<(&str, &str)>)> = vec![(vec![], vec![]); group.order()];
        for e in &b.entries {
            expect_len(e, 4, "object|morphism <element> <source> <image>")?;
            let g = group.index(&e.tokens[1]).ok_or_else(|| input(e.line, format!("unknown group element `{}`", e.tokens[1])))?;
            let pair = (e.tokens[2].as_str(), e.tokens[3].as_str());
            match e.tokens[0].as_str() {
                "object" => per[g].0.push(pair),
                "morphism" => per[g].1.push(pair),
                other => return Err(input(e.line, format!("unknown action entry `{other}`"))),
            }
        }
        let rho = per
            .iter()
            .enumerate()
            .map(|(g, (o, m))| {
                if g == group.identity() && o.is_empty() && m.is_empty() {
                    Ok(CatFunctor::identity(c.clone()))
                } else {
                    CatFunctor::from_names(c.clone(), c.clone(), o, m)
                }
            })
            .collect::<catlift::Result<Vec<_>>>()
            .map_err(|e| from_core(b.line, b, e))?;
        GroupAction::new(group, c, rho).map_err(|e| from_core(b.line, b, e))
    }

    fn load_involution(&self, b: &Block) -> Result<InvolutiveCategory, LoadError> {
        let c = self.category(b.line, required(b, "category")?)?.clone();
        let (mut objs, mut mors) = (Vec::new(), Vec::new());
        for e in &b.entries {
            expect_len(e, 3, "object|morphism <source> <image>")?;
            let pair = (e.tokens[1].as_str(), e.tokens[2].as_str());
            match e.tokens[0].as_str() {
                "object" => objs.push(pair),
                "morphism" => mors.push(pair),
                other => return Err(input(e.line, format!("unknown involution entry `{other}`"))),
            }
        }
        InvolutiveCategory::from_names(c, &objs, &mors).map_err(|e| from_core(b.line, b, e))
    }
}

fn builtin_category(b: &Block, spec: &str) -> Result<FiniteCategory, LoadError> {
    let (head, arg) = spec.split_once(':').map_or((spec, None), |(h, a)| (h, Some(a)));
    let count = || -> Result<usize, LoadError> {
        number(b.line, arg.ok_or_else(|| input(b.line, format!("builtin `{head}` needs `:<n>`")))?, "size")
    };
    let names = |n: usize| (0..n).map(|k| k.to_string()).collect::<Vec<_>>();
    Ok(match head {
        "empty" => empty(),
        "terminal" => point(),
        "arrow" => walking_arrow(),
        "iso" => walking_iso(),
        "parallel" => parallel_pair(),
        "ordinal" => ordinal(count()?),
        "discrete" | "codiscrete" => {
            let ns = names(count()?);
            let refs: Vec<&str> = ns.iter().map(String::as_str).collect();
            if head == "discrete" {
                discrete(&refs)
            } else {
                codiscrete(&refs)
            }
        }
        _ => return Err(input(b.line, format!("unknown builtin category `{spec}`"))),
    })
}

fn load_category(b: &Block) -> Result<FiniteCategory, LoadError> {
    if let Some(spec) = b.param("builtin") {
        no_entries(b)?;
        return builtin_category(b, spec);
    }
    let mut builder = CategoryBuilder::new();
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut has_identity = Vec::new();
    for e in &b.entries {
        match e.tokens[0].as_str() {
            "object" => {
                expect_len(e, 2, "object <name>")?;
                objects.push(e.tokens[1].clone());
            }
            "morphism" => {
                expect_len(e, 4, "morphism <name> <source> <target>")?;
                morphisms.push((e.tokens[1].clone(), e.tokens[2].clone(), e.tokens[3].clone()));
            }
            "identity" => {
                expect_len(e, 3, "identity <object> <morphism>")?;
                has_identity.push(e.tokens[1].clone());
                builder.identity(&e.tokens[1], &e.tokens[2]);
            }
            "compose" => {
                expect_len(e, 4, "compose <g> <f> <g∘f>")?;
                builder.composite(&e.tokens[1], &e.tokens[2], &e.tokens[3]);
            }
            other => return Err(input(e.line, format!("unknown category entry `{other}`"))),
        }
    }
    for o in &objects {
        builder.object(o);
        // objects without a declared identity get a fresh `id_<object>`
        if !has_identity.contains(o) {
            let id = format!("id_{o}");
            if morphisms.iter().any(|m| m.0 == id) {
                return Err(input(b.line, format!("object `{o}` has no identity and `{id}` is taken")));
            }
            builder.identity(o, &id);
            morphisms.push((id, o.clone(), o.clone()));
        }
    }
    for (m, s, t) in &morphisms {
        builder.morphism(m, s, t);
    }
    let c = builder.build().map_err(|e| from_core(b.line, b, e))?;
    let report = c.validate();
    if !report.is_valid() {
        return Err(LoadError {
            line: b.line,
            message: format!("category `{}` violates the category axioms: {}", b.name, report),
            failure: Failure::Invalid,
        });
    }
    Ok(c)
}

fn load_group(b: &Block) -> Result<FiniteGroup, LoadError> {
    if let Some(spec) = b.param("builtin") {
        no_entries(b)?;
        let (head, arg) = spec.split_once(':').map_or((spec, None), |(h, a)| (h, Some(a)));
        let n = || -> Result<usize, LoadError> { number(b.line, arg.unwrap_or(""), "group size") };
        return Ok(match head {
            "cyclic" => FiniteGroup::cyclic(n()?),
            "symmetric" => FiniteGroup::symmetric(n()?),
            "klein" => FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)),
            _ => return Err(input(b.line, format!("unknown builtin group `{spec}`"))),
        });
    }
    let mut elements = Vec::new();
    let mut products = Vec::new();
    for e in &b.entries {
        match e.tokens[0].as_str() {
            "element" => {
                expect_len(e, 2, "element <name>")?;
                elements.push(e.tokens[1].clone());
            }
            "mul" => {
                expect_len(e, 4, "mul <g> <h> <gh>")?;
                products.push(e);
            }
            other => return Err(input(e.line, format!("unknown group entry `{other}`"))),
        }
    }
    let idx =
        |e: &Entry, s: &str| elements.iter().position(|x| x == s).ok_or_else(|| input(e.line, format!("unknown element `{s}`")));
    let n = elements.len();
    let mut table = vec![vec![usize::MAX; n]; n];
    for e in products {
        let (g, h, k) = (idx(e, &e.tokens[1])?, idx(e, &e.tokens[2])?, idx(e, &e.tokens[3])?);
        table[g][h] = k;
    }
    if table.iter().flatten().any(|&v| v == usize::MAX) {
        return Err(input(b.line, format!("group `{}` needs a product for every pair", b.name)));
    }
    FiniteGroup::new(elements, table).map_err(|e| from_core(b.line, b, e))
}

fn load_diagram(b: &Block, shape: Arc<FiniteCategory>, morphism_name: impl Fn(&str) -> String) -> Result<SetDiagram, LoadError> {
    let (elem_kw, map_kw) = if b.kind == "diagram" { ("element", "map") } else { ("simplex", "map") };
    let mut sets: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut maps: BTreeMap<String, Vec<(String, String)>> = BTreeMap::new();
    for e in &b.entries {
        let kw = e.tokens[0].as_str();
        if kw == elem_kw {
            expect_len(e, 3, &format!("{elem_kw} <object> <element>"))?;
            let obj = if b.kind == "diagram" { e.tokens[1].clone() } else { format!("[{}]", e.tokens[1]) };
            if shape.object_index(&obj).is_none() {
                return Err(input(e.line, format!("unknown object `{}`", e.tokens[1])));
            }
            sets.entry(obj).or_default().push(e.tokens[2].clone());
        } else if kw == map_kw {
            expect_len(e, 4, &format!("{map_kw} <morphism> <element> <image>"))?;
            let m = morphism_name(&e.tokens[1]);
            if shape.morphism_index(&m).is_none() {
                return Err(input(e.line, format!("unknown morphism `{}`", e.tokens[1])));
            }
            maps.entry(m).or_default().push((e.tokens[2].clone(), e.tokens[3].clone()));
        } else {
            return Err(input(e.line, format!("unknown {} entry `{kw}`", b.kind)));
        }
    }
    let sets: Vec<(&str, Vec<&str>)> = sets.iter().map(|(k, v)| (k.as_str(), v.iter().map(String::as_str).collect())).collect();
    let maps: Vec<(&str, Vec<(&str, &str)>)> =
        maps.iter().map(|(k, v)| (k.as_str(), v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect())).collect();
    SetDiagram::from_names(shape, &sets, &maps).map_err(|e| from_core(b.line, b, e))
}

fn two_element_kind(line: usize, s: &str) -> Result<TwoElementKind, LoadError> {
    Ok(match s {
        "or" => TwoElementKind::Or,
        "and" => TwoElementKind::And,
        "additive" => TwoElementKind::Additive { shift: false, sign: false },
        "additive-shift" => TwoElementKind::Additive { shift: true, sign: false },
        "additive-sign" => TwoElementKind::Additive { shift: false, sign: true },
        "additive-shift-sign" => TwoElementKind::Additive { shift: true, sign: true },
        _ => return Err(input(line, format!("unknown two-element structure `{s}`"))),
    })
}

fn load_operad(b: &Block) -> Result<OperadData, LoadError> {
    let bound: usize = number(b.line, required(b, "bound")?, "arity bound")?;
    if bound == 0 {
        return Err(input(b.line, "operads need an arity bound of at least 1"));
    }
    let cyclic = match b.param("cyclic") {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => return Err(input(b.line, format!("`cyclic={other}` must be true or false"))),
    };
    let data = if let Some(spec) = b.param("builtin") {
        no_entries(b)?;
        let (head, arg) = spec.split_once(':').map_or((spec, None), |(h, a)| (h, Some(a)));
        match head {
            "terminal" | "terminal-nullary" => {
                let nullary = head == "terminal-nullary";
                OperadData { operad: terminal(bound, nullary), cyclic: cyclic.then(|| terminal_cyclic(bound, nullary)) }
            }
            "associative" => OperadData { operad: associative(bound), cyclic: cyclic.then(|| cyclic_associative(bound)) },
            "two-element" => {
                let kind = two_element_kind(b.line, arg.unwrap_or(""))?;
                OperadData { operad: two_element(kind, bound), cyclic: cyclic.then(|| two_element_cyclic(kind, bound)) }
            }
            _ => return Err(input(b.line, format!("unknown builtin operad `{spec}`"))),
        }
    } else {
        explicit_operad(b, bound, cyclic)?
    };
    let report = validate_operad(&data.operad);
    if !report.valid {
        return Err(LoadError {
            line: b.line,
            message: format!("operad `{}` fails its axioms: {}", b.name, report.violations.join("; ")),
            failure: Failure::Invalid,
        });
    }
    if let Some(c) = &data.cyclic {
        let report = validate_cyclic(c);
        if !report.valid {
            return Err(LoadError {
                line: b.line,
                message: format!("cyclic operad `{}` fails its axioms: {}", b.name, report.violations.join("; ")),
                failure: Failure::Invalid,
            });
        }
    }
    Ok(data)
}

fn explicit_operad(b: &Block, bound: usize, cyclic: bool) -> Result<OperadData, LoadError> {
    let sym = Sym::new(bound + 1);
    let mut elements: Vec<Vec<String>> = vec![vec![]; bound + 1];
    let mut unit = None;
    for e in b.entries.iter().filter(|e| e.tokens[0] == "element" || e.tokens[0] == "unit") {
        if e.tokens[0] == "unit" {
            expect_len(e, 2, "unit <element>")?;
            unit = Some(e);
            continue;
        }
        expect_len(e, 3, "element <arity> <name>")?;
        let n: usize = number(e.line, &e.tokens[1], "arity")?;
        if n > bound {
            return Err(input(e.line, format!("arity {n} exceeds the bound {bound}")));
        }
        elements[n].push(e.tokens[2].clone());
    }
    let elem = |line: usize, n: usize, s: &str| {
        elements[n].iter().position(|x| x == s).ok_or_else(|| input(line, format!("unknown element `{s}` of arity {n}")))
    };
    let unit = match unit {
        Some(e) => elem(e.line, 1, &e.tokens[1])?,
        None => return Err(input(b.line, format!("operad `{}` needs a `unit` entry", b.name))),
    };
    let size = |n: usize| elements[n].len();
    let mut comp: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for m in 1..=bound {
        for n in 0..=bound {
            if m + n - 1 <= bound {
                comp.insert((m, n), vec![usize::MAX; m * size(m) * size(n)]);
            }
        }
    }
    let mut action: Vec<Vec<Vec<usize>>> = (0..=bound).map(|n| vec![vec![usize::MAX; size(n)]; sym.perms(n).len()]).collect();
    let mut ext: Vec<Vec<Vec<usize>>> = (0..=bound).map(|n| vec![vec![usize::MAX; size(n)]; sym.perms(n + 1).len()]).collect();
    for e in &b.entries {
        match e.tokens[0].as_str() {
            "element" | "unit" => {}
            "compose" => {
                expect_len(e, 7, "compose <m> <i> <n> <p> <q> <p∘_i q>")?;
                let m: usize = number(e.line, &e.tokens[1], "arity")?;
                let i: usize = number(e.line, &e.tokens[2], "position")?;
                let n: usize = number(e.line, &e.tokens[3], "arity")?;
                let Some(table) = comp.get_mut(&(m, n)).filter(|_| i >= 1 && i <= m) else {
                    return Err(input(e.line, format!("∘_{i} from arities ({m}, {n}) is outside the bound")));
                };
                let (p, q, r) =
                    (elem(e.line, m, &e.tokens[4])?, elem(e.line, n, &e.tokens[5])?, elem(e.line, m + n - 1, &e.tokens[6])?);
                table[((i - 1) * size(m) + p) * size(n) + q] = r;
            }
            kw @ ("act" | "ext") => {
                expect_len(e, 5, &format!("{kw} <arity> <permutation> <p> <image>"))?;
                let n: usize = number(e.line, &e.tokens[1], "arity")?;
                if n > bound {
                    return Err(input(e.line, format!("arity {n} exceeds the bound {bound}")));
                }
                let k = if kw == "act" { n } else { n + 1 };
                let s = permutation(e.line, &e.tokens[2], k)?;
                let (p, r) = (elem(e.line, n, &e.tokens[3])?, elem(e.line, n, &e.tokens[4])?);
                let table = if kw == "act" { &mut action } else { &mut ext };
                table[n][sym.index(&s)][p] = r;
            }
            other => return Err(input(e.line, format!("unknown operad entry `{other}`"))),
        }
    }
    // identity permutations act trivially unless stated otherwise
    for (tables, shift) in [(&mut action, 0), (&mut ext, 1)] {
        for (n, rows) in tables.iter_mut().enumerate() {
            let id: Vec<usize> = (0..n + shift).collect();
            let row = &mut rows[sym.index(&id)];
            for (p, v) in row.iter_mut().enumerate() {
                if *v == usize::MAX {
                    *v = p;
                }
            }
        }
    }
    if comp.values().flatten().any(|&v| v == usize::MAX) {
        return Err(input(b.line, format!("operad `{}` is missing composition entries", b.name)));
    }
    if action.iter().flatten().flatten().any(|&v| v == usize::MAX) {
        return Err(input(b.line, format!("operad `{}` is missing action entries", b.name)));
    }
    let operad = TruncatedOperad::from_tables(bound, elements, unit, comp, action).map_err(|e| from_core(b.line, b, e))?;
    let cyclic = if cyclic {
        if ext.iter().flatten().flatten().any(|&v| v == usize::MAX) {
            return Err(input(b.line, format!("cyclic operad `{}` is missing extended action entries", b.name)));
        }
        Some(TruncatedCyclicOperad::new(operad.clone(), ext).map_err(|e| from_core(b.line, b, e))?)
    } else if b.entries.iter().any(|e| e.tokens[0] == "ext") {
        return Err(input(b.line, format!("operad `{}` has `ext` entries but is not marked cyclic=true", b.name)));
    } else {
        None
    };
    Ok(OperadData { operad, cyclic })
}

fn load_complex(b: &Block) -> Result<ComplexData, LoadError> {
    let p: u32 = number(b.line, required(b, "p")?, "prime")?;
    if !PRIMES.contains(&p) {
        return Err(input(b.line, format!("p={p} is not one of the supported primes {PRIMES:?}")));
    }
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    let mut diffs: BTreeMap<i32, (usize, Vec<i64>)> = BTreeMap::new();
    for e in &b.entries {
        match e.tokens[0].as_str() {
            "dim" => {
                expect_len(e, 3, "dim <degree> <dimension>")?;
                let k: i32 = number(e.line, &e.tokens[1], "degree")?;
                if dims.insert(k, number(e.line, &e.tokens[2], "dimension")?).is_some() {
                    return Err(input(e.line, format!("degree {k} has two dimensions")));
                }
            }
            "d" => {
                expect_len(e, 3, "d <degree> <entries,row-major>")?;
                let k: i32 = number(e.line, &e.tokens[1], "degree")?;
                let entries =
                    e.tokens[2].split(',').map(|x| number(e.line, x, "matrix entry")).collect::<Result<Vec<i64>, _>>()?;
                if diffs.insert(k, (e.line, entries)).is_some() {
                    return Err(input(e.line, format!("degree {k} has two differentials")));
                }
            }
            other => return Err(input(e.line, format!("unknown complex entry `{other}`"))),
        }
    }
    let (Some(&lo), Some(&hi)) = (dims.keys().next(), dims.keys().next_back()) else {
        return Ok(ComplexData { p, lo: 0, dims: vec![], diffs: vec![] });
    };
    let dim_vec: Vec<usize> = (lo..=hi).map(|k| dims.get(&k).copied().unwrap_or(0)).collect();
    let mut out = Vec::new();
    for k in lo..hi {
        let (rows, cols) = (dim_vec[(k + 1 - lo) as usize], dim_vec[(k - lo) as usize]);
        match diffs.remove(&k) {
            Some((line, e)) if e.len() != rows * cols => {
                return Err(input(line, format!("d {k} must have {rows}x{cols} = {} entries", rows * cols)));
            }
            Some((_, e)) => out.push(e),
            None => out.push(vec![0; rows * cols]),
        }
    }
    if let Some((k, (line, _))) = diffs.into_iter().next() {
        return Err(input(line, format!("d {k} leaves the degree window [{lo}, {hi}]")));
    }
    let data = ComplexData { p, lo, dims: dim_vec, diffs: out };
    let check = with_prime!(p, check_complex, &data).expect("prime checked above");
    check.map_err(|e| from_core(b.line, b, e))?;
    Ok(data)
}

fn check_complex<F: catlift::chaincx::Field>(data: &ComplexData) -> catlift::Result<()> {
    data.build::<F>().map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::super::syntax::parse;
    use super::*;

    fn load(text: &str) -> Result<Loaded, LoadError> {
        Loaded::from_document(&parse(text).unwrap())
    }

    #[test]
    fn arrow_and_functor() {
        let l = load(
            "category c\n object a\n object b\n morphism f a b\nend\n\
             category t builtin=terminal\nend\n\
             functor F dom=c cod=t\n object a *\n object b *\n morphism f id_*\nend\n",
        )
        .unwrap();
        assert_eq!(l.categories["c"].num_morphisms(), 3);
        assert_eq!(l.functors["F"].obj_map(), &[0, 0]);
    }

    #[test]
    fn dangling_reference_names_line_and_identifier() {
        let e = load("diagram X shape=nowhere\nend\n").unwrap_err();
        assert_eq!((e.line, e.failure), (1, Failure::Input));
        assert!(e.message.contains("nowhere"));
    }

    #[test]
    fn non_associative_data_is_invalid() {
        let e = load(
            "category m\n object *\n morphism e * *\n morphism f * *\n compose e e f\n compose f f e\n compose e f f\n compose f e e\nend\n",
        )
        .unwrap_err();
        assert_eq!(e.failure, Failure::Invalid);
    }

    #[test]
    fn complexes_check_d_squared() {
        let ok = load("complex C p=2\n dim -1 1\n dim 0 1\n d -1 1\nend\n").unwrap();
        assert_eq!(ok.complexes["C"].dims, vec![1, 1]);
        let bad = load("complex C p=2\n dim 0 1\n dim 1 1\n dim 2 1\n d 0 1\n d 1 1\nend\n").unwrap_err();
        assert_eq!(bad.failure, Failure::Invalid);
        assert!(load("complex C p=4\nend\n").is_err());
    }

    #[test]
    fn explicit_operad_matches_builtin() {
        let text = "operad T bound=1\n element 0 z\n element 1 u\n unit u\n compose 1 1 0 u z z\n compose 1 1 1 u u u\nend\n";
        let l = load(text).unwrap();
        assert_eq!(l.operads["T"].operad.size(0), 1);
        let b = load("operad A bound=3 builtin=associative cyclic=true\nend\n").unwrap();
        assert!(b.operads["A"].cyclic.is_some());
    }

    #[test]
    fn simplicial_sets_load() {
        let text = "sset P dim=1\n simplex 0 v\n simplex 1 vv\n map 0>1:0 vv v\n map 0>1:1 vv v\n map 1>0:0.0 v vv\n map 1>1:0.0 vv vv\n map 1>1:1.1 vv vv\nend\n";
        let l = load(text).unwrap();
        assert_eq!(l.ssets["P"].diagram.total_size(), 2);
    }
}
