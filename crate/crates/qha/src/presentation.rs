//! Quiver-with-relations presentations: the interchange format, its parser
//! and renderer, and the built-in corpus.
//!
//! A presentation lists vertices in their quasi-hereditary order, arrows
//! with positive degrees (default 1), and homogeneous relations. Words
//! compose right-to-left: in `x*y` the arrow `y` acts first, so a path
//! `2 -> 1 -> 2` through arrows `b: 2 -> 1` and `a: 1 -> 2` is written
//! `a*b`.
//!
//! The file format is line oriented UTF-8:
//!
//! ```text
//! algebra NAME
//! field Q            # or Fp:<p>
//! vertices 1 2       # listed order is the quasi-hereditary order
//! arrow a1 : 1 -> 2
//! arrow x : 2 -> 2 [deg 2]
//! relations
//! a1*b1 ; a1*b2 ; 2 a1*b3 - 1/3 a2*b1
//! ```
//!
//! Comments run from `#` to end of line.

use crate::error::{QhaError, Result};
use crate::scalar::{coefficient_string, Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// One homogeneous relation: a linear combination of composable paths with
/// common source, target and total degree. Paths are stored as arrow index
/// sequences in written order (the rightmost arrow acts first).
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuiverPresentation {
    pub name: String,
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl QuiverPresentation {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Source vertex of a word (the rightmost arrow acts first).
    pub fn path_source(&self, word: &[usize]) -> usize {
        self.arrows[*word.last().expect("empty word")].source
    }

    pub fn path_target(&self, word: &[usize]) -> usize {
        self.arrows[word[0]].target
    }

    pub fn path_degree(&self, word: &[usize]) -> i64 {
        word.iter().map(|&a| self.arrows[a].degree).sum()
    }

    pub fn path_is_composable(&self, word: &[usize]) -> bool {
        word.windows(2).all(|w| self.arrows[w[0]].source == self.arrows[w[1]].target)
    }

    pub fn path_string(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.arrows[a].label.clone()).collect::<Vec<_>>().join("*")
    }

    /// Validates all structural invariants; `parse` calls this, and
    /// programmatic constructors should too.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                return Err(parse_err(0, 0, format!("duplicate label `{v}`")));
            }
        }
        for a in &self.arrows {
            if !seen.insert(a.label.clone()) {
                return Err(parse_err(0, 0, format!("duplicate label `{}`", a.label)));
            }
            if a.degree < 1 {
                return Err(parse_err(0, 0, format!("arrow `{}` must have positive degree", a.label)));
            }
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(parse_err(0, 0, format!("arrow `{}` has an unknown endpoint", a.label)));
            }
        }
        for rel in &self.relations {
            if rel.terms.is_empty() {
                return Err(parse_err(0, 0, "empty relation".to_string()));
            }
            let first = &rel.terms[0].1;
            if !self.path_is_composable(first) {
                return Err(parse_err(
                    0,
                    0,
                    format!("non-composable word `{}`", self.path_string(first)),
                ));
            }
            let (src, tgt, deg) =
                (self.path_source(first), self.path_target(first), self.path_degree(first));
            for (coef, word) in &rel.terms {
                if coef.is_zero() {
                    return Err(parse_err(0, 0, "zero coefficient in relation".to_string()));
                }
                if !self.path_is_composable(word) {
                    return Err(parse_err(
                        0,
                        0,
                        format!("non-composable word `{}`", self.path_string(word)),
                    ));
                }
                if self.path_source(word) != src
                    || self.path_target(word) != tgt
                    || self.path_degree(word) != deg
                {
                    return Err(parse_err(
                        0,
                        0,
                        format!("inhomogeneous relation at term `{}`", self.path_string(word)),
                    ));
                }
            }
            if deg < 2 {
                return Err(parse_err(
                    0,
                    0,
                    format!(
                        "relation `{}` has degree {deg} < 2",
                        self.path_string(first)
                    ),
                ));
            }
        }
        Ok(())
    }
}

fn parse_err(line: usize, col: usize, message: String) -> QhaError {
    QhaError::Parse { line, col, message }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Tok {
    line: usize,
    col: usize,
    text: String,
}

fn is_label_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokenizes relation text into numbers, labels and punctuation.
fn lex_relations(lines: &[(usize, String)]) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    for (line_no, line) in lines {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' {
                break;
            } else if c.is_ascii_digit() {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '/' {
                    j += 1;
                    let denom_start = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == denom_start {
                        return Err(parse_err(*line_no, col, "malformed fraction".to_string()));
                    }
                }
                toks.push(Tok { line: *line_no, col, text: chars[i..j].iter().collect() });
                i = j;
            } else if is_label_start(c) {
                let mut j = i;
                while j < chars.len() && is_label_char(chars[j]) {
                    j += 1;
                }
                toks.push(Tok { line: *line_no, col, text: chars[i..j].iter().collect() });
                i = j;
            } else if c == '*' || c == '+' || c == '-' || c == ';' {
                toks.push(Tok { line: *line_no, col, text: c.to_string() });
                i += 1;
            } else {
                return Err(parse_err(*line_no, col, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(toks)
}

fn parse_coefficient(field: Field, text: &str, line: usize, col: usize) -> Result<Scalar> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: i64 = num
        .parse()
        .map_err(|_| parse_err(line, col, format!("bad coefficient `{text}`")))?;
    let d: i64 = den
        .parse()
        .map_err(|_| parse_err(line, col, format!("bad coefficient `{text}`")))?;
    field
        .from_fraction(n, d)
        .map_err(|_| parse_err(line, col, format!("coefficient `{text}` is not invertible")))
}

/// Parses the interchange format into a validated presentation.
pub fn parse(text: &str) -> Result<QuiverPresentation> {
    let mut name = String::new();
    let mut field = Field::Rationals;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    let mut in_relations = false;
    let mut saw_vertices = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if in_relations {
            relation_lines.push((line_no, raw.to_string()));
            continue;
        }
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed, ""),
        };
        match keyword {
            "algebra" => {
                name = rest.to_string();
            }
            "field" => {
                field = Field::parse_spec(rest)
                    .map_err(|e| parse_err(line_no, 1, e.to_string()))?;
            }
            "vertices" => {
                if rest.is_empty() {
                    return Err(parse_err(line_no, 1, "empty vertex list".to_string()));
                }
                vertices = rest.split_whitespace().map(|s| s.to_string()).collect();
                for v in &vertices {
                    if !v.chars().all(is_label_char) {
                        return Err(parse_err(line_no, 1, format!("bad vertex label `{v}`")));
                    }
                }
                saw_vertices = true;
            }
            "arrow" => {
                // arrow LBL : SRC -> TGT [deg K]
                let (lbl, tail) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(line_no, 1, "expected `:` in arrow line".to_string()))?;
                let lbl = lbl.trim();
                if lbl.is_empty() || !is_label_start(lbl.chars().next().unwrap())
                    || !lbl.chars().all(is_label_char)
                {
                    return Err(parse_err(line_no, 1, format!("bad arrow label `{lbl}`")));
                }
                let (ends, degree) = match tail.split_once('[') {
                    Some((e, d)) => {
                        let d = d.trim_end();
                        let inner = d
                            .strip_suffix(']')
                            .ok_or_else(|| parse_err(line_no, 1, "unterminated `[deg K]`".to_string()))?;
                        let k = inner
                            .trim()
                            .strip_prefix("deg")
                            .map(str::trim)
                            .and_then(|s| s.parse::<i64>().ok())
                            .ok_or_else(|| parse_err(line_no, 1, format!("bad degree annotation `{d}`")))?;
                        (e, k)
                    }
                    None => (tail, 1),
                };
                let (src, tgt) = ends
                    .split_once("->")
                    .ok_or_else(|| parse_err(line_no, 1, "expected `->` in arrow line".to_string()))?;
                let src = src.trim();
                let tgt = tgt.trim();
                let source = vertices
                    .iter()
                    .position(|v| v == src)
                    .ok_or_else(|| parse_err(line_no, 1, format!("unknown vertex `{src}`")))?;
                let target = vertices
                    .iter()
                    .position(|v| v == tgt)
                    .ok_or_else(|| parse_err(line_no, 1, format!("unknown vertex `{tgt}`")))?;
                arrows.push(Arrow { label: lbl.to_string(), source, target, degree });
            }
            "relations" => {
                in_relations = true;
            }
            other => {
                return Err(parse_err(line_no, 1, format!("unknown directive `{other}`")));
            }
        }
    }

    if !saw_vertices {
        return Err(parse_err(0, 0, "missing `vertices` line".to_string()));
    }

    let arrow_index = |label: &str| arrows.iter().position(|a| a.label == label);

    // relation text: `;`-separated linear combinations
    let toks = lex_relations(&relation_lines)?;
    let mut relations = Vec::new();
    let mut groups: Vec<Vec<&Tok>> = vec![Vec::new()];
    for t in &toks {
        if t.text == ";" {
            groups.push(Vec::new());
        } else {
            groups.last_mut().unwrap().push(t);
        }
    }
    for group in groups.iter().filter(|g| !g.is_empty()) {
        let mut terms: Vec<(Scalar, Vec<usize>)> = Vec::new();
        let mut i = 0;
        let mut sign = field.one();
        loop {
            // optional leading sign of the term
            while i < group.len() && (group[i].text == "+" || group[i].text == "-") {
                if group[i].text == "-" {
                    sign = sign.neg();
                }
                i += 1;
            }
            if i >= group.len() {
                let t = group.last().unwrap();
                return Err(parse_err(t.line, t.col, "dangling operator in relation".to_string()));
            }
            // optional coefficient
            let mut coef = sign.clone();
            if group[i].text.chars().next().unwrap().is_ascii_digit() {
                let c = parse_coefficient(field, &group[i].text, group[i].line, group[i].col)?;
                coef = coef.mul(&c);
                i += 1;
                if i < group.len() && group[i].text == "*" {
                    i += 1;
                }
            }
            // path: label (* label)*
            let mut word = Vec::new();
            loop {
                if i >= group.len() || !is_label_start(group[i].text.chars().next().unwrap()) {
                    let (l, c) = group
                        .get(i.min(group.len() - 1))
                        .map(|t| (t.line, t.col))
                        .unwrap_or((0, 0));
                    return Err(parse_err(l, c, "expected an arrow label".to_string()));
                }
                let t = group[i];
                let a = arrow_index(&t.text).ok_or_else(|| {
                    parse_err(t.line, t.col, format!("unknown arrow `{}`", t.text))
                })?;
                word.push(a);
                i += 1;
                if i < group.len() && group[i].text == "*" {
                    i += 1;
                    continue;
                }
                break;
            }
            terms.push((coef, word));
            if i >= group.len() {
                break;
            }
            // next term must start with + or -
            match group[i].text.as_str() {
                "+" => {
                    sign = field.one();
                    i += 1;
                }
                "-" => {
                    sign = field.one().neg();
                    i += 1;
                }
                other => {
                    return Err(parse_err(
                        group[i].line,
                        group[i].col,
                        format!("expected `+`, `-` or `;`, found `{other}`"),
                    ));
                }
            }
        }
        relations.push(Relation { terms });
    }

    let p = QuiverPresentation { name, field, vertices, arrows, relations };
    p.validate()?;

    // positioned validation for relation-specific errors: re-check with
    // token locations so messages name the offending token
    for (rel, group) in p.relations.iter().zip(groups.iter().filter(|g| !g.is_empty())) {
        let anchor = group[0];
        let first = &rel.terms[0].1;
        if !p.path_is_composable(first) {
            return Err(parse_err(
                anchor.line,
                anchor.col,
                format!("non-composable word `{}`", p.path_string(first)),
            ));
        }
    }
    Ok(p)
}

/// Renders a presentation in the canonical interchange format.
/// `parse(render(p))` is structurally equal to `p`.
pub fn render(p: &QuiverPresentation) -> String {
    let mut out = String::new();
    if !p.name.is_empty() {
        out.push_str(&format!("algebra {}\n", p.name));
    }
    out.push_str(&format!("field {}\n", p.field.spec_string()));
    out.push_str(&format!("vertices {}\n", p.vertices.join(" ")));
    for a in &p.arrows {
        if a.degree == 1 {
            out.push_str(&format!(
                "arrow {} : {} -> {}\n",
                a.label, p.vertices[a.source], p.vertices[a.target]
            ));
        } else {
            out.push_str(&format!(
                "arrow {} : {} -> {} [deg {}]\n",
                a.label, p.vertices[a.source], p.vertices[a.target], a.degree
            ));
        }
    }
    if !p.relations.is_empty() {
        out.push_str("relations\n");
        let rendered: Vec<String> = p
            .relations
            .iter()
            .map(|rel| {
                let mut s = String::new();
                for (k, (coef, word)) in rel.terms.iter().enumerate() {
                    let cs = coefficient_string(coef);
                    let (sign, mag) = match cs.strip_prefix('-') {
                        Some(m) => ("-", m.to_string()),
                        None => ("+", cs),
                    };
                    if k == 0 {
                        if sign == "-" {
                            s.push_str("- ");
                        }
                    } else {
                        s.push_str(&format!(" {sign} "));
                    }
                    if mag != "1" {
                        s.push_str(&format!("{mag} "));
                    }
                    s.push_str(&p.path_string(word));
                }
                s
            })
            .collect();
        out.push_str(&rendered.join(" ;\n"));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Built-in corpus
// ---------------------------------------------------------------------------

/// The family with two vertices and `m` arrows in each direction, subject to
/// all compositions `2 -> 1 -> 2` vanishing.
pub fn ex24(m: usize) -> QuiverPresentation {
    assert!(m >= 1);
    let mut arrows = Vec::new();
    for i in 1..=m {
        arrows.push(Arrow { label: format!("a{i}"), source: 0, target: 1, degree: 1 });
    }
    for j in 1..=m {
        arrows.push(Arrow { label: format!("b{j}"), source: 1, target: 0, degree: 1 });
    }
    let field = Field::Rationals;
    let mut relations = Vec::new();
    for i in 0..m {
        for j in 0..m {
            relations.push(Relation { terms: vec![(field.one(), vec![i, m + j])] });
        }
    }
    QuiverPresentation {
        name: format!("ex24({m})"),
        field,
        vertices: vec!["1".into(), "2".into()],
        arrows,
        relations,
    }
}

/// Three vertices in a chain with one arrow each way and both round trips
/// into the middle vertex vanishing.
pub fn ex25() -> QuiverPresentation {
    let field = Field::Rationals;
    let arrows = vec![
        Arrow { label: "a".into(), source: 0, target: 1, degree: 1 },
        Arrow { label: "b".into(), source: 1, target: 0, degree: 1 },
        Arrow { label: "c".into(), source: 1, target: 2, degree: 1 },
        Arrow { label: "d".into(), source: 2, target: 1, degree: 1 },
    ];
    let relations = vec![
        Relation { terms: vec![(field.one(), vec![0, 1])] }, // a*b
        Relation { terms: vec![(field.one(), vec![2, 3])] }, // c*d
    ];
    QuiverPresentation {
        name: "ex25".into(),
        field,
        vertices: vec!["1".into(), "2".into(), "3".into()],
        arrows,
        relations,
    }
}

/// The expected Ringel dual of [`ex25`], given by its quiver and relations
/// `beta*alpha = delta*gamma = beta*gamma*delta*alpha = 0`.
pub fn ex25_ringel_target() -> QuiverPresentation {
    let field = Field::Rationals;
    let arrows = vec![
        Arrow { label: "alpha".into(), source: 0, target: 2, degree: 1 },
        Arrow { label: "gamma".into(), source: 1, target: 2, degree: 1 },
        Arrow { label: "beta".into(), source: 2, target: 0, degree: 1 },
        Arrow { label: "delta".into(), source: 2, target: 1, degree: 1 },
    ];
    let relations = vec![
        Relation { terms: vec![(field.one(), vec![2, 0])] }, // beta*alpha
        Relation { terms: vec![(field.one(), vec![3, 1])] }, // delta*gamma
        Relation { terms: vec![(field.one(), vec![2, 1, 3, 0])] }, // beta*gamma*delta*alpha
    ];
    QuiverPresentation {
        name: "ex25_ringel_target".into(),
        field,
        vertices: vec!["1".into(), "2".into(), "3".into()],
        arrows,
        relations,
    }
}

/// Linear quiver `1 -> 2 -> ... -> n` with no relations.
pub fn directed_chain(n: usize) -> QuiverPresentation {
    assert!(n >= 1);
    let arrows = (1..n)
        .map(|i| Arrow { label: format!("a{i}"), source: i - 1, target: i, degree: 1 })
        .collect();
    QuiverPresentation {
        name: format!("directed_chain({n})"),
        field: Field::Rationals,
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows,
        relations: Vec::new(),
    }
}

/// `n` isolated vertices.
pub fn semisimple(n: usize) -> QuiverPresentation {
    assert!(n >= 1);
    QuiverPresentation {
        name: format!("semisimple({n})"),
        field: Field::Rationals,
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows: Vec::new(),
        relations: Vec::new(),
    }
}

/// Looks up a corpus entry by name, e.g. `ex24(3)`, `ex25`,
/// `ex25_ringel_target`, `directed_chain(4)`, `semisimple(2)`.
pub fn corpus(name: &str) -> Result<QuiverPresentation> {
    let name = name.trim();
    let (base, arg) = match name.split_once('(') {
        Some((b, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| QhaError::UnknownCorpusName(name.to_string()))?;
            let k: usize = inner
                .trim()
                .parse()
                .map_err(|_| QhaError::UnknownCorpusName(name.to_string()))?;
            (b, Some(k))
        }
        None => (name, None),
    };
    match (base, arg) {
        ("ex24", Some(m)) if m >= 1 => Ok(ex24(m)),
        ("ex25", None) => Ok(ex25()),
        ("ex25_ringel_target", None) => Ok(ex25_ringel_target()),
        ("directed_chain", Some(n)) if n >= 1 => Ok(directed_chain(n)),
        ("semisimple", Some(n)) if n >= 1 => Ok(semisimple(n)),
        _ => Err(QhaError::UnknownCorpusName(name.to_string())),
    }
}

/// Representative corpus names, for listings.
pub fn corpus_names() -> Vec<String> {
    vec![
        "ex24(1)".into(),
        "ex24(2)".into(),
        "ex24(3)".into(),
        "ex25".into(),
        "ex25_ringel_target".into(),
        "directed_chain(2)".into(),
        "directed_chain(3)".into(),
        "directed_chain(4)".into(),
        "semisimple(1)".into(),
        "semisimple(2)".into(),
        "semisimple(3)".into(),
        "semisimple(4)".into(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex24_text_parses_to_expected_shape() {
        let p = corpus("ex24(3)").unwrap();
        assert_eq!(p.vertices.len(), 2);
        assert_eq!(p.arrows.len(), 6);
        assert_eq!(p.relations.len(), 9);
        p.validate().unwrap();
    }

    #[test]
    fn ex25_shape() {
        let p = ex25();
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(p.arrows.len(), 4);
        assert_eq!(p.relations.len(), 2);
    }

    #[test]
    fn ringel_target_relation_degrees() {
        let p = ex25_ringel_target();
        assert_eq!(p.arrows.len(), 4);
        let mut degs: Vec<i64> =
            p.relations.iter().map(|r| p.path_degree(&r.terms[0].1)).collect();
        degs.sort();
        assert_eq!(degs, vec![2, 2, 4]);
    }

    #[test]
    fn one_vertex_no_arrows_parses() {
        let p = parse("algebra unit\nfield Q\nvertices 1\n").unwrap();
        assert_eq!(p.vertices, vec!["1"]);
        assert!(p.arrows.is_empty());
        assert!(p.relations.is_empty());
    }

    #[test]
    fn roundtrip_on_corpus() {
        for name in corpus_names() {
            let p = corpus(&name).unwrap();
            let q = parse(&render(&p)).unwrap();
            assert_eq!(p, q, "roundtrip failed for {name}");
        }
    }

    #[test]
    fn roundtrip_keeps_degree_annotation() {
        let text = "algebra g\nfield Q\nvertices 1 2\narrow x : 1 -> 2 [deg 2]\n";
        let p = parse(text).unwrap();
        assert_eq!(p.arrows[0].degree, 2);
        let rendered = render(&p);
        assert!(rendered.contains("[deg 2]"));
        assert_eq!(parse(&rendered).unwrap(), p);
    }

    #[test]
    fn semisimple_renders_without_arrow_lines() {
        let text = render(&semisimple(3));
        assert!(text.contains("vertices 1 2 3"));
        assert!(!text.contains("arrow"));
        assert!(!text.contains("relations"));
    }

    #[test]
    fn error_on_noncomposable_word() {
        let text = "algebra bad\nfield Q\nvertices 1 2\narrow a : 1 -> 2\nrelations\na*a\n";
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("non-composable"), "{err}");
    }

    #[test]
    fn error_on_inhomogeneous_relation() {
        let text = "algebra bad\nfield Q\nvertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\narrow c : 1 -> 1 [deg 2]\nrelations\na*b + c\n";
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("inhomogeneous"), "{err}");
    }

    #[test]
    fn error_on_duplicate_label() {
        let text = "algebra bad\nfield Q\nvertices 1 2\narrow a : 1 -> 2\narrow a : 2 -> 1\n";
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("duplicate label `a`"), "{err}");
    }

    #[test]
    fn error_on_low_degree_relation() {
        // a single arrow as a relation has degree 1
        let text = "algebra bad\nfield Q\nvertices 1 2\narrow a : 1 -> 2\nrelations\na\n";
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("degree 1 < 2"), "{err}");
    }

    #[test]
    fn error_on_unknown_arrow_names_token() {
        let text = "algebra bad\nfield Q\nvertices 1 2\narrow a : 1 -> 2\nrelations\nzz*a\n";
        let err = parse(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("unknown arrow `zz`"), "{msg}");
        assert!(msg.contains("line 6"), "{msg}");
    }

    #[test]
    fn relation_coefficients_parse() {
        let text = "algebra c\nfield Q\nvertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\narrow x : 2 -> 2 [deg 2]\nrelations\n2 a*b - 1/3 x ; x + a*b\n";
        let p = parse(text).unwrap();
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.relations[0].terms.len(), 2);
        let minus_third = Field::Rationals.from_fraction(-1, 3).unwrap();
        assert_eq!(p.relations[0].terms[1].0, minus_third);
    }

    #[test]
    fn corpus_rejects_unknown_names() {
        assert!(corpus("ex99").is_err());
        assert!(corpus("ex24(0)").is_err());
        assert!(corpus("semisimple").is_err());
    }
}
