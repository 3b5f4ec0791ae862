//! The tower description language.
//!
//! ```text
//! # the node, with the branch x killed
//! field: F32003
//! vars: x y
//! quotient: [x*y]
//! koszul: [x]
//! ```
//!
//! One `key: value` per line. Steps (`koszul`, `trivext`) apply in the order
//! they appear. `trivext: N [f, g]` adjoins `S/(f, g)` in degree `-N`;
//! `trivext: N gens K [[..], ..]` takes relation columns of length `K`.
//! The optional keys `elements`, `matrix`, `module` and `points` feed the
//! verifiers.

use std::fmt;

use dgreg::dg::{DGRingSpec, ExtensionModule, Step};
use dgreg::field::DEFAULT_PRIME;
use dgreg::regularity::DGModuleSpec;
use dgreg::{AlgebraError, Field, FieldElem, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for Diagnostic {}

fn diag(line: usize, column: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Clone, Debug)]
pub struct TowerDocument {
    pub field: Field,
    pub vars: Vec<String>,
    pub base: Vec<Poly>,
    pub steps: Vec<Step>,
    pub point: Option<Vec<FieldElem>>,
    pub label: Option<String>,
    pub elements: Option<Vec<Poly>>,
    pub matrix: Option<Vec<Vec<Poly>>>,
    pub module: Option<DGModuleSpec>,
    pub points: Option<Vec<Vec<FieldElem>>>,
}

impl TowerDocument {
    pub fn spec(&self) -> DGRingSpec {
        let mut spec = DGRingSpec::quotient(self.field, self.vars.clone(), self.base.clone());
        spec.steps = self.steps.clone();
        spec.point = self.point.clone();
        spec
    }
}

#[derive(Clone, Debug)]
enum Item {
    Atom(String, usize),
    List(Vec<Item>, usize),
}

impl Item {
    fn column(&self) -> usize {
        match self {
            Item::Atom(_, c) | Item::List(_, c) => *c,
        }
    }
}

/// Cursor over one line; columns are 1-based character positions.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, start: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: start,
            line,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn expect_end(&mut self) -> Result<(), Diagnostic> {
        if self.at_end() {
            Ok(())
        } else {
            Err(diag(self.line, self.col(), "unexpected trailing input"))
        }
    }

    fn word(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| !c.is_whitespace() && *c != '[') {
            self.pos += 1;
        }
        (self.pos > start).then(|| (self.chars[start..self.pos].iter().collect(), start + 1))
    }

    fn list(&mut self) -> Result<Item, Diagnostic> {
        self.skip_ws();
        let open = self.col();
        if self.peek() != Some('[') {
            return Err(diag(self.line, open, "expected '['"));
        }
        self.pos += 1;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(Item::List(items, open));
        }
        loop {
            self.skip_ws();
            let item = if self.peek() == Some('[') { self.list()? } else { self.atom()? };
            items.push(item);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(Item::List(items, open));
                }
                Some(c) => return Err(diag(self.line, self.col(), format!("expected ',' or ']', found '{c}'"))),
                None => return Err(diag(self.line, open, "unclosed '['")),
            }
        }
    }

    fn atom(&mut self) -> Result<Item, Diagnostic> {
        let start = self.pos;
        let mut depth = 0i32;
        while let Some(c) = self.peek() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' | ']' if depth <= 0 => break,
                '[' => return Err(diag(self.line, self.col(), "unexpected '['")),
                _ => {}
            }
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let lead = text.len() - text.trim_start().len();
        let text = text.trim().to_string();
        if text.is_empty() {
            return Err(diag(self.line, start + 1, "empty list entry"));
        }
        Ok(Item::Atom(text, start + 1 + lead))
    }
}

struct Ctx {
    field: Field,
    vars: Option<Vec<String>>,
}

impl Ctx {
    fn vars(&self, line: usize) -> Result<&[String], Diagnostic> {
        self.vars
            .as_deref()
            .ok_or_else(|| diag(line, 1, "'vars' must be declared before any polynomial"))
    }

    fn poly(&self, item: &Item, line: usize) -> Result<Poly, Diagnostic> {
        let Item::Atom(text, col) = item else {
            return Err(diag(line, item.column(), "expected a polynomial, found a list"));
        };
        Poly::parse(text, self.vars(line)?, self.field).map_err(|e| match e {
            AlgebraError::Parse { column, message } => {
                let chars = text.char_indices().take_while(|(b, _)| *b < column - 1).count();
                diag(line, col + chars, message)
            }
            other => diag(line, *col, other.to_string()),
        })
    }

    fn polys(&self, item: &Item, line: usize) -> Result<Vec<Poly>, Diagnostic> {
        match item {
            Item::List(items, _) => items.iter().map(|i| self.poly(i, line)).collect(),
            Item::Atom(_, c) => Err(diag(line, *c, "expected a list")),
        }
    }

    fn matrix(&self, item: &Item, line: usize) -> Result<Vec<Vec<Poly>>, Diagnostic> {
        match item {
            Item::List(rows, _) => rows.iter().map(|r| self.polys(r, line)).collect(),
            Item::Atom(_, c) => Err(diag(line, *c, "expected a list of lists")),
        }
    }

    fn scalar(&self, item: &Item, line: usize) -> Result<FieldElem, Diagnostic> {
        let p = self.poly(item, line)?;
        if !p.is_constant() {
            return Err(diag(line, item.column(), "expected a constant"));
        }
        Ok(p.constant_term())
    }

    fn point(&self, item: &Item, line: usize) -> Result<Vec<FieldElem>, Diagnostic> {
        let Item::List(items, col) = item else {
            return Err(diag(line, item.column(), "expected a list"));
        };
        let n = self.vars(line)?.len();
        if items.len() != n {
            return Err(diag(line, *col, format!("point needs {n} coordinates, got {}", items.len())));
        }
        items.iter().map(|i| self.scalar(i, line)).collect()
    }
}

fn parse_field(text: &str, line: usize, col: usize) -> Result<Field, Diagnostic> {
    let t = text.trim();
    if t == "QQ" || t == "Q" {
        return Ok(Field::Rational);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))
        .unwrap_or(t);
    let p: u32 = digits
        .parse()
        .map_err(|_| diag(line, col, format!("unknown field '{t}' (use QQ or Fp, e.g. F32003)")))?;
    Field::prime(p).map_err(|e| diag(line, col, e.to_string()))
}

fn parse_shift(word: Option<(String, usize)>, line: usize, col: usize) -> Result<u32, Diagnostic> {
    let (w, c) = word.ok_or_else(|| diag(line, col, "trivext needs a shift"))?;
    let shift: u32 = w.parse().map_err(|_| diag(line, c, format!("invalid shift '{w}'")))?;
    if shift < 1 {
        return Err(diag(line, c, "trivext shift must be at least 1"));
    }
    Ok(shift)
}

const KEYS: [&str; 11] = [
    "field", "vars", "quotient", "koszul", "trivext", "point", "label", "elements", "matrix", "module", "points",
];

pub fn parse(text: &str) -> Result<TowerDocument, Diagnostic> {
    let mut ctx = Ctx {
        field: Field::Prime(DEFAULT_PRIME),
        vars: None,
    };
    let mut seen: Vec<&str> = Vec::new();
    let mut base = Vec::new();
    let mut steps: Vec<(Step, usize)> = Vec::new();
    let mut base_line = 1;
    let mut doc_point = None;
    let mut point_line = 0;
    let mut label = None;
    let mut elements = None;
    let mut matrix = None;
    let mut module = None;
    let mut points = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let indent = content.chars().take_while(|c| c.is_whitespace()).count();
            return Err(diag(line, indent + 1, "expected 'key: value'"));
        };
        let key_text = &content[..colon];
        let key = key_text.trim();
        let key_col = key_text.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let Some(&key) = KEYS.iter().find(|k| **k == key) else {
            return Err(diag(line, key_col, format!("unknown key '{key}'")));
        };
        let repeatable = matches!(key, "koszul" | "trivext");
        if !repeatable && seen.contains(&key) {
            return Err(diag(line, key_col, format!("'{key}' given twice")));
        }
        seen.push(key);
        let start = content[..colon + 1].chars().count();
        let mut cur = Cursor::new(content, line, start);
        cur.skip_ws();
        let value_col = cur.col();
        match key {
            "field" => {
                if ctx.vars.is_some() {
                    return Err(diag(line, key_col, "'field' must come before 'vars'"));
                }
                ctx.field = parse_field(&content[colon + 1..], line, value_col)?;
            }
            "vars" => {
                let names: Vec<&str> = content[colon + 1..]
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .collect();
                if names.is_empty() {
                    return Err(diag(line, value_col, "no variables given"));
                }
                for (i, v) in names.iter().enumerate() {
                    let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok {
                        return Err(diag(line, value_col, format!("invalid variable name '{v}'")));
                    }
                    if names[..i].contains(v) {
                        return Err(diag(line, value_col, format!("variable '{v}' declared twice")));
                    }
                }
                if names.len() >= dgreg::MAX_VARS {
                    return Err(diag(line, value_col, format!("at most {} variables", dgreg::MAX_VARS - 1)));
                }
                ctx.vars = Some(names.into_iter().map(String::from).collect());
            }
            "quotient" => {
                base = ctx.polys(&cur.list()?, line)?;
                cur.expect_end()?;
                base_line = line;
            }
            "koszul" => {
                let elems = ctx.polys(&cur.list()?, line)?;
                cur.expect_end()?;
                if elems.is_empty() {
                    return Err(diag(line, value_col, "koszul needs at least one element"));
                }
                steps.push((Step::Koszul(elems), line));
            }
            "trivext" => {
                let shift = parse_shift(cur.word(), line, value_col)?;
                let save = cur.pos;
                let module = match cur.word() {
                    Some((w, _)) if w == "gens" => {
                        let (k, kc) = cur.word().ok_or_else(|| diag(line, cur.col(), "expected a generator count"))?;
                        let gens: usize = k.parse().map_err(|_| diag(line, kc, format!("invalid generator count '{k}'")))?;
                        if gens == 0 {
                            return Err(diag(line, kc, "a trivial extension needs at least one generator"));
                        }
                        let item = cur.list()?;
                        let cols = ctx.matrix(&item, line)?;
                        if let Some(bad) = cols.iter().position(|c| c.len() != gens) {
                            let Item::List(items, _) = &item else { unreachable!() };
                            return Err(diag(line, items[bad].column(), format!("relation column must have {gens} entries")));
                        }
                        ExtensionModule { gens, relations: cols }
                    }
                    Some((w, c)) => return Err(diag(line, c, format!("expected a list or 'gens', found '{w}'"))),
                    None => {
                        cur.pos = save;
                        ExtensionModule::cyclic(ctx.polys(&cur.list()?, line)?)
                    }
                };
                cur.expect_end()?;
                steps.push((Step::TrivExt { module, shift }, line));
            }
            "point" => {
                doc_point = Some(ctx.point(&cur.list()?, line)?);
                cur.expect_end()?;
                point_line = line;
            }
            "label" => {
                label = Some(content[colon + 1..].trim().to_string());
            }
            "elements" => {
                elements = Some(ctx.polys(&cur.list()?, line)?);
                cur.expect_end()?;
            }
            "matrix" => {
                let m = ctx.matrix(&cur.list()?, line)?;
                cur.expect_end()?;
                if m.iter().any(|r| r.len() != m.len()) {
                    return Err(diag(line, value_col, "matrix must be square"));
                }
                matrix = Some(m);
            }
            "module" => {
                let (w, c) = cur.word().ok_or_else(|| diag(line, value_col, "expected 'zero' or 'koszul [..]'"))?;
                module = Some(match w.as_str() {
                    "zero" => DGModuleSpec::Zero,
                    "koszul" => DGModuleSpec::Koszul(ctx.polys(&cur.list()?, line)?),
                    _ => return Err(diag(line, c, format!("unknown module kind '{w}'"))),
                });
                cur.expect_end()?;
            }
            "points" => {
                let item = cur.list()?;
                cur.expect_end()?;
                let Item::List(items, _) = &item else { unreachable!() };
                points = Some(items.iter().map(|p| ctx.point(p, line)).collect::<Result<Vec<_>, _>>()?);
            }
            _ => unreachable!(),
        }
    }

    let vars = ctx.vars.clone().ok_or_else(|| diag(1, 1, "missing 'vars'"))?;
    let doc = TowerDocument {
        field: ctx.field,
        vars,
        base,
        steps: steps.iter().map(|(s, _)| s.clone()).collect(),
        point: doc_point,
        label,
        elements,
        matrix,
        module,
        points,
    };
    validate(&doc, base_line, point_line, &steps)?;
    Ok(doc)
}

/// Checks every prefix of the tower so a failure points at the offending line.
/// A prefix that is fine at the origin but not at the point blames the point.
fn validate(doc: &TowerDocument, base_line: usize, point_line: usize, steps: &[(Step, usize)]) -> Result<(), Diagnostic> {
    let mut spec = DGRingSpec::quotient(doc.field, doc.vars.clone(), doc.base.clone());
    let check = |spec: &DGRingSpec, line: usize| -> Result<(), Diagnostic> {
        spec.validate().map_err(|e| diag(line, 1, e.to_string()))?;
        if let Some(p) = &doc.point {
            let mut at = spec.clone();
            at.point = Some(p.clone());
            at.at_origin()
                .and_then(|s| s.validate())
                .map_err(|e| diag(point_line, 1, format!("at the point: {e}")))?;
        }
        Ok(())
    };
    check(&spec, base_line)?;
    for (step, line) in steps {
        spec.steps.push(step.clone());
        check(&spec, *line)?;
    }
    Ok(())
}
