use std::cell::RefCell;
use std::fmt;
use std::path::{Path, PathBuf};

use algmax::algebra::{induced_algebra, product_space, Algebra, Subalgebra};
use algmax::exactla::{Field, FieldSpec, Vector};
use algmax::extensions::{
    analyze_extension, decompose_module, induce, restrict, split_type_quotient, tensor_square,
};
use algmax::maximal::{
    brute_force_maximal, certify_maximal, classify_type, max_proper_subalgebra_dim, Certificate, CertifyMethod,
    MaximalContext, MaximalType, TypeReport,
};
use algmax::module::Module;
use algmax::presentations::{
    clamped_check, collapse_edge, delete_arrows, dimension_vector, dimension_vector_for, incidence_maximal, path_algebra, quiver_maximal,
    IncidenceMaximal, PathAlgebraPresentation, Poset, Quiver, QuiverMaximal,
};
use algmax::structure::{analyze, wedderburn_malcev, wedderburn_malcev_complement};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::parse::{self, parse_input, parse_module_text, parse_sub_spec, ParseError, SubSpec};
use crate::{Cli, Cmd, ExtOp, MaximalOp, ModOp, PosetKind, PosetOp, QuiverKind, QuiverOp};

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Io(String),
    Usage(String),
    Op(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Op(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Io(e) => write!(f, "input error: {e}"),
            CliError::Usage(e) => write!(f, "usage error: {e}"),
            CliError::Op(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<algmax::error::Error> for CliError {
    fn from(e: algmax::error::Error) -> Self {
        CliError::Op(e.to_string())
    }
}

type CResult<T> = Result<T, CliError>;

/// Reads input files and remembers their digests in first-read order.
#[derive(Default)]
pub struct Loader {
    digests: RefCell<Vec<(String, String)>>,
}

impl Loader {
    pub fn read(&self, path: &Path) -> CResult<String> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let name = path.display().to_string();
        let mut d = self.digests.borrow_mut();
        if !d.iter().any(|(p, _)| *p == name) {
            d.push((name, format!("{:x}", Sha256::digest(text.as_bytes()))));
        }
        Ok(text)
    }

    pub fn digests(&self) -> Vec<(String, String)> {
        self.digests.borrow().clone()
    }

    /// A subalgebra argument is a file if one exists at that path, otherwise
    /// the text itself with `;` separating lines.
    fn sub_text(&self, arg: &str) -> CResult<(String, String)> {
        let p = Path::new(arg);
        if p.is_file() {
            Ok((arg.to_string(), self.read(p)?))
        } else {
            Ok(("<sub>".to_string(), arg.replace(';', "\n")))
        }
    }
}

fn field_of(loader: &Loader, path: &Path) -> CResult<FieldSpec> {
    let text = loader.read(path)?;
    Ok(parse_input(&path.display().to_string(), &text)?.default_field())
}

fn module_over(loader: &Loader, module: &Path) -> CResult<PathBuf> {
    let text = loader.read(module)?;
    let base = module.parent().unwrap_or(Path::new("."));
    Ok(parse_module_text(&module.display().to_string(), &text, base)?.over)
}

pub fn default_field(loader: &Loader, cmd: &Cmd) -> CResult<FieldSpec> {
    match cmd {
        Cmd::Structure { algebra } | Cmd::Maxdim { algebra } => field_of(loader, algebra),
        Cmd::Maximal(op) => match op {
            MaximalOp::Enumerate { algebra }
            | MaximalOp::Instantiate { algebra, .. }
            | MaximalOp::Certify { algebra, .. }
            | MaximalOp::Classify { algebra, .. }
            | MaximalOp::Brute { algebra, .. } => field_of(loader, algebra),
        },
        Cmd::Ext(ExtOp::Check { algebra, .. }) | Cmd::Mod(ModOp::Induce { algebra, .. }) => field_of(loader, algebra),
        Cmd::Mod(ModOp::Restrict { module, .. } | ModOp::Decompose { module } | ModOp::Dimvec { module }) => {
            let over = module_over(loader, module)?;
            field_of(loader, &over)
        }
        Cmd::Quiver(_) | Cmd::Poset(_) => Ok(FieldSpec::Rationals),
    }
}

fn load_algebra<F: Field>(f: &F, loader: &Loader, path: &Path) -> CResult<Algebra<F>> {
    let text = loader.read(path)?;
    let name = path.display().to_string();
    Ok(parse_input(&name, &text)?.build(&name, f)?)
}

fn load_quiver(loader: &Loader, path: &Path) -> CResult<PathAlgebraPresentation> {
    let text = loader.read(path)?;
    Ok(parse::parse_quiver(&path.display().to_string(), &text)?)
}

fn load_poset(loader: &Loader, path: &Path) -> CResult<Poset> {
    let text = loader.read(path)?;
    Ok(parse::parse_poset(&path.display().to_string(), &text)?)
}

/// The module and the algebra it is declared over.
fn load_module<F: Field>(f: &F, loader: &Loader, path: &Path) -> CResult<(Module<F>, Algebra<F>)> {
    let text = loader.read(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mt = parse_module_text(&path.display().to_string(), &text, base)?;
    let b = load_algebra(f, loader, &mt.over)?;
    Ok((mt.module(&b)?, b))
}

/// The subalgebra and, for family specs, the family record.
fn load_sub<F: Field>(b: &Algebra<F>, loader: &Loader, arg: &str, seed: u64) -> CResult<(Subalgebra<F>, Option<String>)> {
    let (name, text) = loader.sub_text(arg)?;
    match parse_sub_spec(&name, &text, b)? {
        SubSpec::Family { family, params } => {
            let ctx = MaximalContext::new(b, seed)?;
            let a = ctx.instantiate(&family, params.as_deref())?;
            Ok((a, Some(family.record(b.field(), &ctx.block_dims()))))
        }
        SubSpec::Span(vs) => Ok((parse::span_subalgebra(b, &vs)?, None)),
    }
}

fn elems<F: Field>(b: &Algebra<F>, vs: &[Vector<F>]) -> Value {
    json!(vs.iter().map(|v| b.format_vector(v)).collect::<Vec<_>>())
}

fn certificate<F: Field>(b: &Algebra<F>, c: &Certificate<F>) -> Value {
    match c {
        Certificate::Maximal { method } => {
            let m = match method {
                CertifyMethod::Burnside => "burnside",
                CertifyMethod::Exhaustive => "exhaustive",
                CertifyMethod::Witness => "witness",
            };
            json!({ "result": "maximal", "method": m })
        }
        Certificate::NotMaximal { witness } => json!({
            "result": "not-maximal",
            "witness_dim": witness.dim(),
            "witness": elems(b, witness.basis()),
        }),
        Certificate::Inconclusive => json!({ "result": "inconclusive" }),
    }
}

fn type_report<F: Field>(r: &TypeReport<F>) -> Value {
    json!({
        "type": type_name(r.kind),
        "radical_contained": r.radical_contained,
        "radical_a_dim": r.radical_a.dim(),
        "radical_matches_intersection": r.radical_matches_intersection,
        "blocks_a": r.blocks_a,
        "blocks_b": r.blocks_b,
    })
}

fn type_name(k: MaximalType) -> &'static str {
    match k {
        MaximalType::Semisimple => "semisimple",
        MaximalType::Split => "split",
    }
}

/// Certificate plus, when maximal, the type.
fn judge<F: Field>(b: &Algebra<F>, a: &Subalgebra<F>, seed: u64) -> CResult<Value> {
    let cert = certify_maximal(b, a)?;
    let mut v = json!({
        "dim": a.dim(),
        "codim": b.dim() - a.dim(),
        "basis": elems(b, a.basis()),
        "certificate": certificate(b, &cert),
    });
    if cert.is_maximal() {
        v["type"] = json!(type_name(classify_type(b, a, seed)?.kind));
    }
    Ok(v)
}

fn quiver_value(q: &Quiver) -> Value {
    let vs = q.vertices();
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("{}: {} -> {}", a.name, vs[a.source], vs[a.target]))
        .collect();
    json!({ "vertices": vs, "arrows": arrows })
}

fn free_only(p: &PathAlgebraPresentation) -> CResult<&Quiver> {
    if p.relations.is_empty() {
        Ok(&p.quiver)
    } else {
        Err(CliError::Op("this operation acts on path algebras without relations".into()))
    }
}

fn summands<F: Field>(m: &Module<F>, b: &Algebra<F>, seed: u64) -> CResult<Value> {
    let parts = decompose_module(m, b, seed)?;
    let mut dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
    dims.sort_unstable_by(|x, y| y.cmp(x));
    Ok(json!(dims))
}

pub fn run<F: Field>(f: &F, loader: &Loader, cli: &Cli) -> CResult<Value> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Structure { algebra } => {
            let b = load_algebra(f, loader, algebra)?;
            let r = analyze(&b, seed)?;
            let j2 = product_space(&b, &r.radical, &r.radical);
            let c = wedderburn_malcev_complement(&b, seed)?;
            Ok(json!({
                "dim": b.dim(),
                "presentation": b.presentation().tag(),
                "radical_dim": r.radical.dim(),
                "radical": elems(&b, r.radical.basis()),
                "radical_square_dim": j2.dim(),
                "blocks": r.block_dims(),
                "split": r.schur,
                "complement_dim": c.dim(),
                "complement": elems(&b, c.basis()),
            }))
        }
        Cmd::Maxdim { algebra } => {
            let b = load_algebra(f, loader, algebra)?;
            Ok(json!({ "dim": b.dim(), "maxdim": max_proper_subalgebra_dim(&b, seed)? }))
        }
        Cmd::Maximal(op) => maximal(f, loader, op, seed),
        Cmd::Ext(ExtOp::Check { sub, algebra }) => {
            let b = load_algebra(f, loader, algebra)?;
            let (a, _) = load_sub(&b, loader, sub, seed)?;
            let an = analyze_extension(&b, &a)?;
            let idempotent = an.separability_idempotent.as_ref().map(|e| {
                let t = tensor_square(&b, &a);
                format_tensor(&b, &t.tq.lift(e))
            });
            let mut v = json!({
                "dim_a": a.dim(),
                "dim_b": b.dim(),
                "split": an.split,
                "complement": an.complement.as_ref().map(|i| elems(&b, i.basis())),
                "ideal": an.ideal,
                "nilpotent": an.nilpotent,
                "trivial": an.trivial,
                "separable": an.separable(),
                "idempotent": idempotent,
            });
            if !an.split {
                if let Ok((bq, aq)) = split_type_quotient(&b, &a) {
                    let q = analyze_extension(&bq, &aq)?;
                    v["modulo_radical_of_a"] = json!({ "split": q.split, "trivial": q.trivial });
                }
            }
            Ok(v)
        }
        Cmd::Mod(op) => modules(f, loader, op, seed),
        Cmd::Quiver(op) => quivers(f, loader, op, seed),
        Cmd::Poset(op) => posets(f, loader, op, seed),
    }
}

fn format_tensor<F: Field>(b: &Algebra<F>, v: &[F::Elem]) -> String {
    let f = b.field();
    let d = b.dim();
    let mut terms = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let (x, y) = (&b.names()[k / d], &b.names()[k % d]);
        if f.is_one(c) {
            terms.push(format!("{x}⊗{y}"));
        } else {
            terms.push(format!("{}*{x}⊗{y}", f.format(c)));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn maximal<F: Field>(f: &F, loader: &Loader, op: &MaximalOp, seed: u64) -> CResult<Value> {
    match op {
        MaximalOp::Enumerate { algebra } => {
            let b = load_algebra(f, loader, algebra)?;
            let ctx = MaximalContext::new(&b, seed)?;
            let dims = ctx.block_dims();
            let fams: Vec<Value> = ctx
                .enumerate()?
                .iter()
                .map(|fam| json!({ "record": fam.record(f, &dims), "dim": b.dim() - fam.codim(&dims) }))
                .collect();
            Ok(json!({
                "dim": b.dim(),
                "blocks": dims,
                "bimodule": ctx.component_data().to_string(),
                "count": fams.len(),
                "families": fams,
            }))
        }
        MaximalOp::Instantiate { algebra, sub } => {
            let b = load_algebra(f, loader, algebra)?;
            let (a, record) = load_sub(&b, loader, sub, seed)?;
            Ok(json!({
                "family": record,
                "dim": a.dim(),
                "codim": b.dim() - a.dim(),
                "basis": elems(&b, a.basis()),
            }))
        }
        MaximalOp::Certify { algebra, sub } => {
            let b = load_algebra(f, loader, algebra)?;
            let (a, _) = load_sub(&b, loader, sub, seed)?;
            let cert = certify_maximal(&b, &a)?;
            Ok(json!({ "dim": a.dim(), "certificate": certificate(&b, &cert) }))
        }
        MaximalOp::Classify { algebra, sub } => {
            let b = load_algebra(f, loader, algebra)?;
            let (a, _) = load_sub(&b, loader, sub, seed)?;
            Ok(type_report(&classify_type(&b, &a, seed)?))
        }
        MaximalOp::Brute { algebra, max_dim } => {
            let b = load_algebra(f, loader, algebra)?;
            let bf = brute_force_maximal(&b, *max_dim)?;
            let mut classes = Vec::new();
            for c in 0..bf.class_count {
                let members: Vec<usize> = (0..bf.maximal.len()).filter(|&i| bf.class_of[i] == c).collect();
                let rep = &bf.maximal[members[0]];
                classes.push(json!({
                    "class": c + 1,
                    "members": members.len(),
                    "dim": rep.dim(),
                    "type": type_name(classify_type(&b, rep, seed)?.kind),
                    "representative": elems(&b, rep.basis()),
                }));
            }
            Ok(json!({
                "dim": b.dim(),
                "maximal_count": bf.maximal.len(),
                "class_count": bf.class_count,
                "max_dim": bf.max_dim(),
                "classes": classes,
            }))
        }
    }
}

fn modules<F: Field>(f: &F, loader: &Loader, op: &ModOp, seed: u64) -> CResult<Value> {
    match op {
        ModOp::Induce { module, sub, algebra } => {
            let b = load_algebra(f, loader, algebra)?;
            let (a, _) = load_sub(&b, loader, sub, seed)?;
            let ind = induced_algebra(&b, &a);
            let text = loader.read(module)?;
            let base = module.parent().unwrap_or(Path::new("."));
            let mt = parse_module_text(&module.display().to_string(), &text, base)?;
            let m = mt.module(&ind)?;
            let n = induce(&m, &a, &b)?;
            Ok(json!({
                "dim_in": m.dim(),
                "dim_out": n.dim(),
                "dimension_vector": dimension_vector(&n, &b).ok(),
                "summand_dims": summands(&n, &b, seed)?,
            }))
        }
        ModOp::Restrict { module, sub } => {
            let (m, b) = load_module(f, loader, module)?;
            let (a, _) = load_sub(&b, loader, sub, seed)?;
            let r = restrict(&m, &a);
            let ind = induced_algebra(&b, &a);
            // A carries no vertex labels, so ranks are taken on a complete set
            // of primitive idempotents from its Wedderburn-Malcev complement.
            let idems = wedderburn_malcev(&ind, seed)?.primitive_idempotents();
            Ok(json!({
                "dim": r.dim(),
                "summand_dims": summands(&r, &ind, seed)?,
                "idempotent_ranks": dimension_vector_for(&r, &idems),
            }))
        }
        ModOp::Decompose { module } => {
            let (m, b) = load_module(f, loader, module)?;
            let parts = decompose_module(&m, &b, seed)?;
            let items: Vec<Value> = parts
                .iter()
                .map(|p| json!({ "dim": p.dim(), "dimension_vector": dimension_vector(p, &b).ok() }))
                .collect();
            Ok(json!({ "dim": m.dim(), "count": items.len(), "summands": items }))
        }
        ModOp::Dimvec { module } => {
            let (m, b) = load_module(f, loader, module)?;
            Ok(json!({ "dim": m.dim(), "dimension_vector": dimension_vector(&m, &b)? }))
        }
    }
}

fn parse_coords<F: Field>(f: &F, s: &str) -> CResult<Vector<F>> {
    s.split(',')
        .map(|c| f.parse(c.trim()).ok_or_else(|| CliError::Usage(format!("bad coordinate '{c}' in '{s}'"))))
        .collect()
}

fn quivers<F: Field>(f: &F, loader: &Loader, op: &QuiverOp, seed: u64) -> CResult<Value> {
    match op {
        QuiverOp::Build { quiver } => {
            let p = load_quiver(loader, quiver)?;
            let b = path_algebra(&p, f)?;
            let r = analyze(&b, seed)?;
            let mut v = quiver_value(&p.quiver);
            v["relations"] = json!(p.relations.len());
            v["bound"] = json!(p.nilpotency_bound);
            v["acyclic"] = json!(p.quiver.is_acyclic());
            v["tree"] = json!(p.quiver.is_tree());
            v["dim"] = json!(b.dim());
            v["basis"] = json!(b.names());
            v["radical_dim"] = json!(r.radical.dim());
            v["blocks"] = json!(r.block_dims());
            Ok(v)
        }
        QuiverOp::Maximal { quiver, kind } => {
            let p = load_quiver(loader, quiver)?;
            let b = path_algebra(&p, f)?;
            let k = match kind {
                QuiverKind::Merge { a, b } => QuiverMaximal::Merge(a.clone(), b.clone()),
                QuiverKind::Hyperplane { a, b, vectors } => QuiverMaximal::SplitHyperplane(
                    a.clone(),
                    b.clone(),
                    vectors.iter().map(|s| parse_coords(f, s)).collect::<CResult<_>>()?,
                ),
            };
            let a = quiver_maximal(&p, &b, &k)?;
            judge(&b, &a, seed)
        }
        QuiverOp::Collapse { quiver, arrow } => {
            let p = load_quiver(loader, quiver)?;
            let c = collapse_edge(free_only(&p)?, arrow, f)?;
            let mut v = json!({
                "quiver": quiver_value(&c.quiver),
                "ambient_dim": c.ambient.dim(),
                "sub_dim": c.sub.dim(),
                "corner_dim": c.corner.dim(),
                "condition_star": c.condition_star,
            });
            if c.condition_star {
                let cert = certify_maximal(&c.ambient, &c.sub)?;
                v["certificate"] = certificate(&c.ambient, &cert);
                v["type"] = json!(type_name(classify_type(&c.ambient, &c.sub, seed)?.kind));
                v["separable"] = json!(algmax::extensions::separability_idempotent(&c.ambient, &c.sub)?.is_some());
            }
            Ok(v)
        }
        QuiverOp::Delete { quiver, vertices } => {
            let p = load_quiver(loader, quiver)?;
            let d = delete_arrows(free_only(&p)?, vertices, f)?;
            let split = algmax::extensions::split_complement(&d.ambient, &d.sub)?.is_some();
            Ok(json!({
                "quiver": quiver_value(&d.quiver),
                "ambient_dim": d.ambient.dim(),
                "sub_dim": d.sub.dim(),
                "complement_dim": d.complement.dim(),
                "complement": elems(&d.ambient, d.complement.basis()),
                "split": split,
                "square_zero": d.square_zero,
            }))
        }
    }
}

fn posets<F: Field>(f: &F, loader: &Loader, op: &PosetOp, seed: u64) -> CResult<Value> {
    match op {
        PosetOp::Build { poset } => {
            let p = load_poset(loader, poset)?;
            let b = algmax::presentations::incidence_algebra(&p, f)?;
            let els = p.elements();
            let covers: Vec<String> = p.covers().iter().map(|&(a, c)| format!("{} < {}", els[a], els[c])).collect();
            Ok(json!({
                "elements": els,
                "covers": covers,
                "dim": b.dim(),
                "basis": b.names(),
            }))
        }
        PosetOp::Maximal { poset, kind } => {
            let p = load_poset(loader, poset)?;
            let b = algmax::presentations::incidence_algebra(&p, f)?;
            let k = match kind {
                PosetKind::Merge { a, b } => IncidenceMaximal::Is(a.clone(), b.clone()),
                PosetKind::Remove { a, b } => IncidenceMaximal::It(a.clone(), b.clone()),
            };
            let a = incidence_maximal(&p, &b, &k)?;
            judge(&b, &a, seed)
        }
        PosetOp::Clamped { poset, a, b } => {
            let p = load_poset(loader, poset)?;
            Ok(json!({ "a": a, "b": b, "clamped": clamped_check(&p, a, b)? }))
        }
    }
}
