//! Text formats: algebras, quivers, posets, modules and subalgebra specs.
//!
//! All formats are line based. `#` starts a comment, blank lines are
//! ignored, and positions in errors are 1-based `line:col`.

use std::fmt;
use std::path::{Path as FsPath, PathBuf};

use algmax::algebra::{Algebra, Subalgebra};
use algmax::exactla::{Field, FieldSpec, Matrix, Rationals, Subspace, Vector};
use algmax::maximal::MaximalFamily;
use algmax::module::Module;
use algmax::presentations::{incidence_algebra, path_algebra, PathAlgebraPresentation, Poset, Quiver, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.source, self.line, self.col, self.msg)
    }
}

pub type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Copy, Debug)]
pub struct Token<'a> {
    pub line: usize,
    pub col: usize,
    pub text: &'a str,
}

/// Source text split into significant lines of tokens.
pub struct Source<'a> {
    pub name: String,
    pub lines: Vec<(usize, &'a str, Vec<Token<'a>>)>,
}

impl<'a> Source<'a> {
    pub fn new(name: &str, text: &'a str) -> Self {
        let mut lines = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
                match (c.is_whitespace(), start) {
                    (false, None) => start = Some(i),
                    (true, Some(s)) => {
                        toks.push(Token {
                            line: k + 1,
                            col: body[..s].chars().count() + 1,
                            text: &body[s..i],
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            if !toks.is_empty() {
                lines.push((k + 1, body, toks));
            }
        }
        Source { name: name.to_string(), lines }
    }

    pub fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            source: self.name.clone(),
            line,
            col,
            msg: msg.into(),
        }
    }

    pub fn at(&self, t: &Token, msg: impl Into<String>) -> ParseError {
        self.err(t.line, t.col, msg)
    }

    fn first_keyword(&self) -> Option<&'a str> {
        self.lines.first().map(|(_, _, t)| t[0].text)
    }
}

fn parse_usize(src: &Source, t: &Token) -> PResult<usize> {
    t.text
        .parse()
        .map_err(|_| src.at(t, format!("expected a nonnegative integer, found '{}'", t.text)))
}

fn parse_elem<F: Field>(f: &F, src: &Source, t: &Token, text: &str) -> PResult<F::Elem> {
    f.parse(text)
        .ok_or_else(|| src.at(t, format!("'{text}' is not an element of {}", f.spec())))
}

pub fn parse_field_spec(s: &str) -> Option<FieldSpec> {
    let s = s.trim();
    if s == "Q" {
        return Some(FieldSpec::Rationals);
    }
    let p = s.strip_prefix('F')?.trim_start_matches(['_', ' ']);
    let spec = FieldSpec::PrimeField(p.parse().ok()?);
    spec.validate().ok().map(|_| spec)
}

// ---- algebra files ----

/// `field`, `dim`, `basis`, `unit`, `mul` lines, kept as text so that the
/// same file can be read over any field.
pub struct AlgebraText<'a> {
    pub src: Source<'a>,
    pub field: FieldSpec,
    pub names: Vec<String>,
    unit: Vec<Token<'a>>,
    muls: Vec<(usize, usize, Vec<(usize, Token<'a>, &'a str)>)>,
}

fn basis_ref(src: &Source, names: &[String], t: &Token, text: &str) -> PResult<usize> {
    if let Some(i) = names.iter().position(|n| n == text) {
        return Ok(i);
    }
    match text.parse::<usize>() {
        Ok(i) if (1..=names.len()).contains(&i) => Ok(i - 1),
        _ => Err(src.at(t, format!("unknown basis element '{text}'"))),
    }
}

pub fn parse_algebra_text<'a>(name: &str, text: &'a str) -> PResult<AlgebraText<'a>> {
    let src = Source::new(name, text);
    let mut field = None;
    let mut dim = None;
    let mut names: Option<Vec<String>> = None;
    let mut unit = None;
    let mut muls = Vec::new();
    for (ln, _, toks) in &src.lines {
        let kw = &toks[0];
        let args = &toks[1..];
        match kw.text {
            "field" => {
                let s: Vec<&str> = args.iter().map(|t| t.text).collect();
                let spec = parse_field_spec(&s.join(" "))
                    .ok_or_else(|| src.at(kw, "expected 'field Q' or 'field F p' with p prime"))?;
                field = Some(spec);
            }
            "dim" => {
                let [t] = args else {
                    return Err(src.at(kw, "expected 'dim n'"));
                };
                dim = Some(parse_usize(&src, t)?);
            }
            "basis" => {
                let d = dim.ok_or_else(|| src.at(kw, "'basis' before 'dim'"))?;
                if args.len() != d {
                    return Err(src.at(kw, format!("expected {d} basis names, found {}", args.len())));
                }
                let mut ns: Vec<String> = Vec::new();
                for t in args {
                    if t.text.contains(':') || ns.iter().any(|n| n == t.text) {
                        return Err(src.at(t, format!("invalid or repeated basis name '{}'", t.text)));
                    }
                    ns.push(t.text.to_string());
                }
                names = Some(ns);
            }
            "unit" => {
                let d = dim.ok_or_else(|| src.at(kw, "'unit' before 'dim'"))?;
                if args.len() != d {
                    return Err(src.at(kw, format!("expected {d} unit coordinates, found {}", args.len())));
                }
                unit = Some(args.to_vec());
            }
            "mul" => {
                let ns = names.as_ref().ok_or_else(|| src.at(kw, "'mul' before 'basis'"))?;
                if args.len() < 3 || args[2].text != "->" {
                    return Err(src.err(*ln, kw.col, "expected 'mul i j -> k:v ...'"));
                }
                let i = basis_ref(&src, ns, &args[0], args[0].text)?;
                let j = basis_ref(&src, ns, &args[1], args[1].text)?;
                let mut terms = Vec::new();
                for t in &args[3..] {
                    let (k, v) = t
                        .text
                        .split_once(':')
                        .ok_or_else(|| src.at(t, format!("expected k:v, found '{}'", t.text)))?;
                    terms.push((basis_ref(&src, ns, t, k)?, *t, v));
                }
                muls.push((i, j, terms));
            }
            other => return Err(src.at(kw, format!("unknown keyword '{other}'"))),
        }
    }
    let end = src.lines.last().map_or(1, |l| l.0);
    let field = field.ok_or_else(|| src.err(1, 1, "missing 'field' line"))?;
    dim.ok_or_else(|| src.err(end, 1, "missing 'dim' line"))?;
    let names = names.ok_or_else(|| src.err(end, 1, "missing 'basis' line"))?;
    let unit = unit.ok_or_else(|| src.err(end, 1, "missing 'unit' line"))?;
    Ok(AlgebraText {
        src,
        field,
        names,
        unit,
        muls,
    })
}

impl AlgebraText<'_> {
    pub fn build<F: Field>(&self, f: &F) -> PResult<Algebra<F>> {
        let src = &self.src;
        let unit: Vector<F> = self
            .unit
            .iter()
            .map(|t| parse_elem(f, src, t, t.text))
            .collect::<PResult<_>>()?;
        let mut products = Vec::new();
        for (i, j, terms) in &self.muls {
            let mut row = Vec::new();
            for (k, t, v) in terms {
                row.push((*k, parse_elem(f, src, t, v)?));
            }
            products.push((*i, *j, row));
        }
        let a = Algebra::from_sparse(f, self.names.clone(), unit, &products).map_err(|e| src.err(1, 1, e.to_string()))?;
        let report = a.validate();
        if !report.is_valid() {
            return Err(src.err(1, 1, format!("structure constants do not define a unital associative algebra: {report:?}")));
        }
        Ok(a)
    }
}

// ---- quivers and posets ----

pub fn parse_quiver(name: &str, text: &str) -> PResult<PathAlgebraPresentation> {
    let src = Source::new(name, text);
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    let mut bound = None;
    for (_, body, toks) in &src.lines {
        let kw = &toks[0];
        match kw.text {
            "vertex" => {
                let [t] = &toks[1..] else {
                    return Err(src.at(kw, "expected 'vertex <name>'"));
                };
                vertices.push(t.text.to_string());
            }
            "arrow" => {
                let [n, s, t] = &toks[1..] else {
                    return Err(src.at(kw, "expected 'arrow <name> <source> <target>'"));
                };
                for v in [s, t] {
                    if !vertices.iter().any(|x| x == v.text) {
                        return Err(src.at(v, format!("unknown vertex '{}'", v.text)));
                    }
                }
                arrows.push((n.text.to_string(), s.text.to_string(), t.text.to_string()));
            }
            "relation" => {
                let Some(first) = toks.get(1) else {
                    return Err(src.at(kw, "empty relation"));
                };
                relations.push((first.line, first.col, &body[first.col - 1..]));
            }
            "bound" => {
                let [t] = &toks[1..] else {
                    return Err(src.at(kw, "expected 'bound <L>'"));
                };
                bound = Some(parse_usize(&src, t)?);
            }
            other => return Err(src.at(kw, format!("unknown keyword '{other}'"))),
        }
    }
    let quiver = Quiver::new(vertices, arrows).map_err(|e| src.err(1, 1, e.to_string()))?;
    let mut rels: Vec<Relation> = Vec::new();
    for (line, col, text) in relations {
        let mut rel = Vec::new();
        for (start, term) in split_terms(text) {
            let at = |msg: String| src.err(line, col + start, msg);
            let (coef, path) = split_coefficient(term);
            let c = Rationals.parse(coef).ok_or_else(|| at(format!("bad coefficient '{coef}'")))?;
            let p = quiver.parse_path(path).map_err(|e| at(e.to_string()))?;
            rel.push((c, p));
        }
        rels.push(rel);
    }
    PathAlgebraPresentation::new(quiver, rels, bound).map_err(|e| src.err(1, 1, e.to_string()))
}

/// Terms of `c1*x + c2*y + ...` with their character offsets.
fn split_terms(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), '+'))) {
        if c == '+' {
            let piece = &text[start..i];
            let lead = piece.len() - piece.trim_start().len();
            out.push((text[..start + lead].chars().count(), piece.trim()));
            start = i + 1;
        }
    }
    out
}

/// `c*x`, `-x` or `x`.
fn split_coefficient(term: &str) -> (&str, &str) {
    match term.split_once('*') {
        Some((c, x)) => (c.trim(), x.trim()),
        None => match term.strip_prefix('-') {
            Some(x) => ("-1", x.trim()),
            None => ("1", term),
        },
    }
}

pub fn parse_poset(name: &str, text: &str) -> PResult<Poset> {
    let src = Source::new(name, text);
    let mut elements: Vec<String> = Vec::new();
    let mut covers = Vec::new();
    for (_, _, toks) in &src.lines {
        let kw = &toks[0];
        match kw.text {
            "element" => {
                let [t] = &toks[1..] else {
                    return Err(src.at(kw, "expected 'element <name>'"));
                };
                elements.push(t.text.to_string());
            }
            "cover" => {
                let [a, b] = &toks[1..] else {
                    return Err(src.at(kw, "expected 'cover <lower> <upper>'"));
                };
                for v in [a, b] {
                    if !elements.iter().any(|x| x == v.text) {
                        return Err(src.at(v, format!("unknown element '{}'", v.text)));
                    }
                }
                covers.push((a.text.to_string(), b.text.to_string()));
            }
            other => return Err(src.at(kw, format!("unknown keyword '{other}'"))),
        }
    }
    Poset::new(elements, covers).map_err(|e| src.err(1, 1, e.to_string()))
}

// ---- any algebra input ----

pub enum Input<'a> {
    Algebra(AlgebraText<'a>),
    Quiver(PathAlgebraPresentation),
    Poset(Poset),
}

impl Input<'_> {
    pub fn default_field(&self) -> FieldSpec {
        match self {
            Input::Algebra(a) => a.field,
            _ => FieldSpec::Rationals,
        }
    }

    pub fn build<F: Field>(&self, name: &str, f: &F) -> PResult<Algebra<F>> {
        let wrap = |e: algmax::error::Error| ParseError {
            source: name.to_string(),
            line: 1,
            col: 1,
            msg: e.to_string(),
        };
        match self {
            Input::Algebra(a) => a.build(f),
            Input::Quiver(p) => path_algebra(p, f).map_err(wrap),
            Input::Poset(p) => incidence_algebra(p, f).map_err(wrap),
        }
    }
}

/// Detect the format from the first keyword.
pub fn parse_input<'a>(name: &str, text: &'a str) -> PResult<Input<'a>> {
    let src = Source::new(name, text);
    match src.first_keyword() {
        Some("field" | "dim" | "basis") => parse_algebra_text(name, text).map(Input::Algebra),
        Some("vertex" | "arrow") => parse_quiver(name, text).map(Input::Quiver),
        Some("element" | "cover") => parse_poset(name, text).map(Input::Poset),
        Some(kw) => {
            let (line, _, toks) = &src.lines[0];
            Err(src.err(*line, toks[0].col, format!("'{kw}' does not start an algebra, quiver or poset file")))
        }
        None => Err(src.err(1, 1, "empty input")),
    }
}

// ---- elements and subalgebra specs ----

/// A linear combination `c1*x1 + c2*x2 + ...` of basis names.
pub fn parse_element<F: Field>(b: &Algebra<F>, src: &Source, line: usize, col: usize, text: &str) -> PResult<Vector<F>> {
    let f = b.field();
    let mut v = b.zero();
    for (start, term) in split_terms(text) {
        let at = |msg: String| src.err(line, col + start, msg);
        if term.is_empty() {
            return Err(at("empty term".into()));
        }
        let (coef, name) = split_coefficient(term);
        let c = f.parse(coef).ok_or_else(|| at(format!("bad coefficient '{coef}'")))?;
        let i = b.basis_index(name).ok_or_else(|| at(format!("unknown basis element '{name}'")))?;
        v[i] = f.add(&v[i], &c);
    }
    Ok(v)
}

pub enum SubSpec<F: Field> {
    Family {
        family: MaximalFamily<F>,
        params: Option<Vec<F::Elem>>,
    },
    Span(Vec<Vector<F>>),
}

/// Either `family ...` (a record as printed by `maximal enumerate`) with an
/// optional `param c1 ... cm` line, or one `span <element>` line per
/// spanning vector.
pub fn parse_sub_spec<F: Field>(name: &str, text: &str, b: &Algebra<F>) -> PResult<SubSpec<F>> {
    let src = Source::new(name, text);
    let f = b.field();
    let mut family = None;
    let mut params = None;
    let mut span = Vec::new();
    for (_, body, toks) in &src.lines {
        let kw = &toks[0];
        match kw.text {
            "family" => {
                family = Some(MaximalFamily::parse(f, body.trim()).map_err(|e| src.at(kw, e.to_string()))?);
            }
            "param" => {
                let ps: Vec<F::Elem> = toks[1..].iter().map(|t| parse_elem(f, &src, t, t.text)).collect::<PResult<_>>()?;
                params = Some(ps);
            }
            "span" => {
                let Some(first) = toks.get(1) else {
                    return Err(src.at(kw, "expected 'span <element>'"));
                };
                span.push(parse_element(b, &src, first.line, first.col, &body[first.col - 1..])?);
            }
            other => return Err(src.at(kw, format!("unknown keyword '{other}'"))),
        }
    }
    match (family, span.is_empty()) {
        (Some(family), true) => Ok(SubSpec::Family { family, params }),
        (None, false) if params.is_none() => Ok(SubSpec::Span(span)),
        (None, true) => Err(src.err(1, 1, "expected a 'family' line or 'span' lines")),
        _ => Err(src.err(1, 1, "mix of 'family' and 'span' lines")),
    }
}

/// Span lines are closed under multiplication before use.
pub fn span_subalgebra<F: Field>(b: &Algebra<F>, vs: &[Vector<F>]) -> algmax::error::Result<Subalgebra<F>> {
    let s = Subspace::span(b.field(), b.dim(), vs);
    Subalgebra::new(b, s)
}

// ---- modules ----

pub struct ModuleText<'a> {
    pub src: Source<'a>,
    pub over: PathBuf,
    pub dim: usize,
    acts: Vec<(Token<'a>, Vec<Vec<Token<'a>>>)>,
}

/// `module over <file> dim d`, then blocks `act <basis element> :` followed
/// by d rows of d entries.
pub fn parse_module_text<'a>(name: &str, text: &'a str, base: &FsPath) -> PResult<ModuleText<'a>> {
    let src = Source::new(name, text);
    let mut it = src.lines.iter();
    let Some((_, _, head)) = it.next() else {
        return Err(src.err(1, 1, "empty module file"));
    };
    let words: Vec<&str> = head.iter().map(|t| t.text).collect();
    let (over, dim) = match words.as_slice() {
        ["module", "over", file, "dim", _] => (base.join(file), parse_usize(&src, &head[4])?),
        _ => return Err(src.at(&head[0], "expected 'module over <algebra-file> dim d'")),
    };
    let mut acts: Vec<(Token, Vec<Vec<Token>>)> = Vec::new();
    for (_, _, toks) in it {
        if toks[0].text == "act" {
            match toks.as_slice() {
                [_, x, colon] if colon.text == ":" => acts.push((*x, Vec::new())),
                _ => return Err(src.at(&toks[0], "expected 'act <basis element> :'")),
            }
            continue;
        }
        let Some((_, rows)) = acts.last_mut() else {
            return Err(src.at(&toks[0], "matrix row before any 'act' line"));
        };
        if toks.len() != dim {
            return Err(src.at(&toks[0], format!("expected {dim} entries, found {}", toks.len())));
        }
        if rows.len() == dim {
            return Err(src.at(&toks[0], format!("more than {dim} rows")));
        }
        rows.push(toks.clone());
    }
    for (x, rows) in &acts {
        if rows.len() != dim {
            return Err(src.at(x, format!("expected {dim} rows, found {}", rows.len())));
        }
    }
    Ok(ModuleText { src, over, dim, acts })
}

impl ModuleText<'_> {
    /// Action matrices in the order of `names`; every basis element needs
    /// exactly one block.
    pub fn build<F: Field>(&self, f: &F, names: &[String]) -> PResult<Vec<Matrix<F>>> {
        let src = &self.src;
        let mut mats: Vec<Option<Matrix<F>>> = vec![None; names.len()];
        for (x, rows) in &self.acts {
            let i = basis_ref(src, names, x, x.text)?;
            if mats[i].is_some() {
                return Err(src.at(x, format!("repeated action of '{}'", x.text)));
            }
            let rs: Vec<Vector<F>> = rows
                .iter()
                .map(|r| r.iter().map(|t| parse_elem(f, src, t, t.text)).collect())
                .collect::<PResult<_>>()?;
            mats[i] = Some(Matrix::from_rows(f, self.dim, &rs).map_err(|e| src.at(x, e.to_string()))?);
        }
        mats.into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| src.err(1, 1, format!("no action given for '{}'", names[i]))))
            .collect()
    }

    pub fn module<F: Field>(&self, b: &Algebra<F>) -> PResult<Module<F>> {
        let mats = self.build(b.field(), b.names())?;
        Module::new(b, self.dim, mats).map_err(|e| self.src.err(1, 1, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M2: &str = "field Q\ndim 4\nbasis e11 e12 e21 e22\nunit 1 0 0 1\n\
        mul e11 e11 -> e11:1\nmul e11 e12 -> e12:1\nmul e12 e21 -> e11:1\nmul e12 e22 -> e12:1\n\
        mul e21 e11 -> e21:1\nmul e21 e12 -> e22:1\nmul e22 e21 -> e21:1\nmul e22 e22 -> e22:1\n";

    #[test]
    fn algebra_round_trip() {
        let t = parse_algebra_text("m2", M2).unwrap();
        let a = t.build(&Rationals).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.mul(&a.basis_vector(1), &a.basis_vector(2)), a.basis_vector(0));
    }

    #[test]
    fn errors_carry_positions() {
        let bad = M2.replace("mul e12 e21 -> e11:1", "mul e12 e31 -> e11:1");
        let e = parse_algebra_text("m2", &bad).err().unwrap();
        assert_eq!((e.line, e.col), (7, 9));
        let e = parse_algebra_text("x", "field F 4\n").err().unwrap();
        assert_eq!((e.line, e.col), (1, 1));
    }

    #[test]
    fn non_associative_is_rejected() {
        let bad = M2.replace("mul e22 e22 -> e22:1\n", "");
        assert!(parse_algebra_text("m2", &bad).unwrap().build(&Rationals).is_err());
    }

    #[test]
    fn quiver_with_relation() {
        let text = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\nrelation 1*b.a\n";
        let p = parse_quiver("a3", text).unwrap();
        assert_eq!(path_algebra(&p, &Rationals).unwrap().dim(), 5);
        let e = parse_quiver("a3", &text.replace("1*b.a", "1*b.c")).err().unwrap();
        assert_eq!((e.line, e.col), (6, 10));
    }

    #[test]
    fn terms_and_offsets() {
        assert_eq!(split_terms("a + 2*b"), vec![(0, "a"), (4, "2*b")]);
        assert_eq!(split_coefficient("-x"), ("-1", "x"));
        assert_eq!(split_coefficient("1/2*x"), ("1/2", "x"));
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("F 3"), Some(FieldSpec::PrimeField(3)));
        assert_eq!(parse_field_spec("F_2"), Some(FieldSpec::PrimeField(2)));
        assert_eq!(parse_field_spec("F4"), None);
    }
}
