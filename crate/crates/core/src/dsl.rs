//! The chart-description language.
//!
//! ```text
//! document := chart-decl (line)*
//! chart    := "chart" "(" ident ("," ident){4} ")"
//! line     := ("form" | "field") ident "=" expr
//!           | "points" ident "=" tuple ("," tuple)*
//! tuple    := "(" signed ("," signed){4} ")"
//! expr     := term (("+" | "-") term)*
//! term     := unary ("*" unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" atom)*
//! atom     := rational | ident | "d" "(" ident ")" | "(" expr ")"
//! ```
//!
//! `^` binds tighter than `*`. Between a 0-form and an integer literal it is
//! a power, otherwise the wedge product. In `field` lines `d(x)` is the
//! coordinate vector field `∂/∂x`; in `form` lines it is the differential
//! `dx`, and `d(name)` of a declared form is its exterior derivative.
//! `#` starts a comment.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exterior::{KForm, MultiIndex, Point, Poly, VectorField, DIM};
use crate::scalar::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Form(KForm),
    Field(VectorField),
    Points(Vec<Point>),
}

/// A parsed document: coordinate names for `x1..x5` and the named items in
/// declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartDocument {
    pub coords: [String; DIM],
    pub items: Vec<(String, Item)>,
}

impl ChartDocument {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn forms(&self) -> Vec<(&str, &KForm)> {
        self.items
            .iter()
            .filter_map(|(n, i)| match i {
                Item::Form(f) => Some((n.as_str(), f)),
                _ => None,
            })
            .collect()
    }

    pub fn fields(&self) -> Vec<(&str, &VectorField)> {
        self.items
            .iter()
            .filter_map(|(n, i)| match i {
                Item::Field(f) => Some((n.as_str(), f)),
                _ => None,
            })
            .collect()
    }

    /// All points of all `points` lines, in order.
    pub fn points(&self) -> Vec<Point> {
        self.items
            .iter()
            .filter_map(|(_, i)| match i {
                Item::Points(p) => Some(p.clone()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    /// Text that parses back to this document.
    pub fn pretty(&self) -> String {
        let mut out = format!("chart ({})\n", self.coords.join(", "));
        for (name, item) in &self.items {
            match item {
                Item::Form(f) => {
                    let _ = writeln!(out, "form {name} = {}", self.form_text(f));
                }
                Item::Field(v) => {
                    let _ = writeln!(out, "field {name} = {}", v.fmt_with(&self.coords));
                }
                Item::Points(ps) => {
                    let tuples: Vec<String> = ps
                        .iter()
                        .map(|p| {
                            let c: Vec<String> = p.coords().iter().map(ToString::to_string).collect();
                            format!("({})", c.join(", "))
                        })
                        .collect();
                    let _ = writeln!(out, "points {name} = {}", tuples.join(", "));
                }
            }
        }
        out
    }

    fn form_text(&self, f: &KForm) -> String {
        if f.is_zero() && f.degree() > 0 {
            let basis: Vec<String> = self.coords[..f.degree()].iter().map(|c| format!("d({c})")).collect();
            return format!("0*{}", basis.join("^"));
        }
        f.fmt_with(&self.coords)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number { value: Rational, integer: bool },
    LParen,
    RParen,
    Comma,
    Eq,
    Plus,
    Minus,
    Star,
    Caret,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex_line(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line, column });
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut integer = true;
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                integer = false;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let value = parse_rational(&lit).map_err(|_| syntax(line, column, format!("invalid rational literal `{lit}`")))?;
            out.push(Token {
                tok: Tok::Number { value, integer },
                line,
                column,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                column,
            });
            continue;
        }
        return Err(syntax(line, column, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num { value: Rational, integer: bool },
    Ident { name: String, line: usize, column: usize },
    D { name: String, line: usize, column: usize },
    Neg(Box<Expr>),
    Bin { op: Op, lhs: Box<Expr>, rhs: Box<Expr>, line: usize, column: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Add,
    Sub,
    Mul,
    Caret,
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or((self.line, self.end_column), |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<&'a Token> {
        match self.peek() {
            Some(t) if &t.tok == want => {
                self.pos += 1;
                Ok(t)
            }
            Some(_) => Err(self.error(format!("expected {what}"))),
            None => Err(self.error(format!("expected {what} before end of line"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize)> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), line, column }) => {
                self.pos += 1;
                Ok((s.clone(), *line, *column))
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(t) = self.peek() {
            let op = match t.tok {
                Tok::Plus => Op::Add,
                Tok::Minus => Op::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs), line: t.line, column: t.column };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(t) = self.peek() {
            if t.tok != Tok::Star {
                break;
            }
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin { op: Op::Mul, lhs: Box::new(lhs), rhs: Box::new(rhs), line: t.line, column: t.column };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Token { tok: Tok::Minus, .. }) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        while let Some(t) = self.peek() {
            if t.tok != Tok::Caret {
                break;
            }
            self.pos += 1;
            let rhs = self.atom()?;
            lhs = Expr::Bin { op: Op::Caret, lhs: Box::new(lhs), rhs: Box::new(rhs), line: t.line, column: t.column };
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(t) = self.next() else {
            return Err(self.error("expected an expression before end of line"));
        };
        match &t.tok {
            Tok::Number { value, integer } => Ok(Expr::Num { value: value.clone(), integer: *integer }),
            Tok::Ident(name) if name == "d" => {
                self.expect(&Tok::LParen, "`(` after `d`")?;
                let (name, line, column) = self.ident("an identifier inside d(...)")?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Expr::D { name, line, column })
            }
            Tok::Ident(name) => Ok(Expr::Ident { name: name.clone(), line: t.line, column: t.column }),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(syntax(t.line, t.column, "expected an expression")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Context {
    Form,
    Field,
}

enum Value {
    Form(KForm),
    Field(VectorField),
}

fn type_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Type {
        line,
        column,
        message: message.into(),
    }
}

struct Env<'a> {
    coords: &'a [String; DIM],
    items: &'a [(String, Item)],
}

impl Env<'_> {
    fn coord(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name).map(|i| i + 1)
    }

    fn item(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    fn eval(&self, e: &Expr, ctx: Context) -> Result<Value> {
        match e {
            Expr::Num { value, .. } => Ok(Value::Form(KForm::function(Poly::constant(value.clone())))),
            Expr::Ident { name, line, column } => {
                if let Some(i) = self.coord(name) {
                    return Ok(Value::Form(KForm::function(Poly::var(i))));
                }
                match (self.item(name), ctx) {
                    (Some(Item::Form(f)), Context::Form) => Ok(Value::Form(f.clone())),
                    (Some(Item::Field(v)), Context::Field) => Ok(Value::Field(v.clone())),
                    (Some(_), _) => Err(type_error(*line, *column, format!("`{name}` cannot be used here"))),
                    (None, _) => Err(Error::UnknownIdentifier { name: name.clone(), line: *line, column: *column }),
                }
            }
            Expr::D { name, line, column } => {
                if let Some(i) = self.coord(name) {
                    return Ok(match ctx {
                        Context::Form => Value::Form(KForm::dx(i)),
                        Context::Field => Value::Field(VectorField::coordinate(i)),
                    });
                }
                match (self.item(name), ctx) {
                    (Some(Item::Form(f)), Context::Form) => Ok(Value::Form(f.d())),
                    (Some(_), _) => Err(type_error(*line, *column, format!("d({name}) is not defined here"))),
                    (None, _) => Err(Error::UnknownIdentifier { name: name.clone(), line: *line, column: *column }),
                }
            }
            Expr::Neg(inner) => Ok(match self.eval(inner, ctx)? {
                Value::Form(f) => Value::Form(-&f),
                Value::Field(v) => Value::Field(-&v),
            }),
            Expr::Bin { op, lhs, rhs, line, column } => {
                let (line, column) = (*line, *column);
                if *op == Op::Caret {
                    if let Expr::Num { value, integer: true } = rhs.as_ref() {
                        if let Value::Form(base) = self.eval(lhs, ctx)? {
                            if base.degree() == 0 {
                                let n = value
                                    .to_integer()
                                    .to_u32()
                                    .filter(|&n| n <= 64)
                                    .ok_or_else(|| type_error(line, column, "exponent too large"))?;
                                return Ok(Value::Form(KForm::function(base.coeff(MultiIndex::EMPTY).pow(n))));
                            }
                        }
                    }
                }
                let a = self.eval(lhs, ctx)?;
                let b = self.eval(rhs, ctx)?;
                binary(*op, a, b, line, column)
            }
        }
    }
}

fn binary(op: Op, a: Value, b: Value, line: usize, column: usize) -> Result<Value> {
    use Value::{Field, Form};
    match (op, a, b) {
        (Op::Add | Op::Sub, Form(x), Form(y)) => {
            if x.degree() != y.degree() {
                return Err(type_error(
                    line,
                    column,
                    format!("cannot add forms of degree {} and {}", x.degree(), y.degree()),
                ));
            }
            Ok(Form(if op == Op::Add { &x + &y } else { &x - &y }))
        }
        (Op::Add | Op::Sub, Field(x), Field(y)) => Ok(Field(if op == Op::Add { &x + &y } else { &x - &y })),
        (Op::Add | Op::Sub, _, _) => Err(type_error(line, column, "cannot add a vector field and a form")),
        (Op::Mul, Form(x), Form(y)) => {
            if x.degree() == 0 {
                Ok(Form(y.scale(&x.coeff(MultiIndex::EMPTY))))
            } else if y.degree() == 0 {
                Ok(Form(x.scale(&y.coeff(MultiIndex::EMPTY))))
            } else {
                Err(type_error(line, column, "`*` needs a function on one side; use `^` for the wedge product"))
            }
        }
        (Op::Mul, Form(f), Field(v)) | (Op::Mul, Field(v), Form(f)) if f.degree() == 0 => {
            Ok(Field(v.scale(&f.coeff(MultiIndex::EMPTY))))
        }
        (Op::Mul, _, _) => Err(type_error(line, column, "vector fields can only be multiplied by functions")),
        (Op::Caret, Form(x), Form(y)) => {
            if x.degree() + y.degree() > DIM {
                return Err(type_error(
                    line,
                    column,
                    format!("wedge of degrees {} and {} exceeds the chart dimension", x.degree(), y.degree()),
                ));
            }
            Ok(Form(x.wedge(&y)))
        }
        (Op::Caret, _, _) => Err(type_error(line, column, "`^` is not defined for vector fields")),
    }
}

const KEYWORDS: [&str; 5] = ["chart", "form", "field", "points", "d"];

pub fn parse_chart(text: &str) -> Result<ChartDocument> {
    let mut coords: Option<[String; DIM]> = None;
    let mut items: Vec<(String, Item)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex_line(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { toks: &toks, pos: 0, line, end_column: raw.chars().count() + 1 };
        let (kw, kl, kc) = cur.ident("`chart`, `form`, `field` or `points`")?;
        let Some(coord_names) = coords.as_ref() else {
            if kw != "chart" {
                return Err(syntax(kl, kc, "document must start with a chart declaration"));
            }
            coords = Some(parse_chart_decl(&mut cur)?);
            continue;
        };
        match kw.as_str() {
            "chart" => return Err(syntax(kl, kc, "chart declared twice")),
            "form" | "field" | "points" => {}
            other => return Err(syntax(kl, kc, format!("unknown declaration `{other}`"))),
        }
        let (name, nl, nc) = cur.ident("a name")?;
        if KEYWORDS.contains(&name.as_str()) || coord_names.contains(&name) || items.iter().any(|(n, _)| n == &name) {
            return Err(syntax(nl, nc, format!("name `{name}` is reserved or already declared")));
        }
        cur.expect(&Tok::Eq, "`=`")?;
        let item = if kw == "points" {
            Item::Points(parse_points(&mut cur)?)
        } else {
            let expr = cur.expr()?;
            if !cur.at_end() {
                return Err(cur.error("unexpected token after expression"));
            }
            let env = Env { coords: coord_names, items: &items };
            let ctx = if kw == "form" { Context::Form } else { Context::Field };
            match (env.eval(&expr, ctx)?, ctx) {
                (Value::Form(f), Context::Form) => Item::Form(f),
                (Value::Field(v), Context::Field) => Item::Field(v),
                (Value::Form(f), Context::Field) if f.is_zero() && f.degree() == 0 => Item::Field(VectorField::zero()),
                _ => return Err(type_error(nl, nc, format!("`{name}` is not a vector field"))),
            }
        };
        items.push((name, item));
    }
    let coords = coords.ok_or_else(|| syntax(1, 1, "missing chart declaration"))?;
    Ok(ChartDocument { coords, items })
}

fn parse_chart_decl(cur: &mut Cursor) -> Result<[String; DIM]> {
    cur.expect(&Tok::LParen, "`(`")?;
    let mut names: Vec<(String, usize, usize)> = vec![cur.ident("a coordinate name")?];
    while let Some(Token { tok: Tok::Comma, .. }) = cur.peek() {
        cur.pos += 1;
        names.push(cur.ident("a coordinate name")?);
    }
    cur.expect(&Tok::RParen, "`)`")?;
    if !cur.at_end() {
        return Err(cur.error("unexpected token after chart declaration"));
    }
    if names.len() != DIM {
        return Err(Error::Arity(names.len()));
    }
    for (i, (n, l, c)) in names.iter().enumerate() {
        if KEYWORDS.contains(&n.as_str()) {
            return Err(syntax(*l, *c, format!("`{n}` cannot be a coordinate name")));
        }
        if names[..i].iter().any(|(m, _, _)| m == n) {
            return Err(syntax(*l, *c, format!("coordinate `{n}` declared twice")));
        }
    }
    Ok(std::array::from_fn(|i| names[i].0.clone()))
}

fn parse_points(cur: &mut Cursor) -> Result<Vec<Point>> {
    let mut points = Vec::new();
    loop {
        cur.expect(&Tok::LParen, "`(` starting a point")?;
        let mut coords = Vec::new();
        loop {
            let negative = matches!(cur.peek(), Some(Token { tok: Tok::Minus, .. }));
            if negative {
                cur.pos += 1;
            }
            match cur.next() {
                Some(Token { tok: Tok::Number { value, .. }, .. }) => {
                    coords.push(if negative { -value.clone() } else { value.clone() })
                }
                _ => {
                    cur.pos -= 1;
                    return Err(cur.error("expected a rational coordinate"));
                }
            }
            match cur.next().map(|t| &t.tok) {
                Some(Tok::Comma) => continue,
                Some(Tok::RParen) => break,
                _ => {
                    cur.pos -= 1;
                    return Err(cur.error("expected `,` or `)`"));
                }
            }
        }
        if coords.len() != DIM {
            return Err(cur.error(format!("a point needs 5 coordinates, got {}", coords.len())));
        }
        points.push(Point::new(std::array::from_fn(|i| coords[i].clone())));
        match cur.next().map(|t| &t.tok) {
            None => break,
            Some(Tok::Comma) => continue,
            Some(_) => {
                cur.pos -= 1;
                return Err(cur.error("expected `,` between points"));
            }
        }
    }
    Ok(points)
}

/// Points file: one point per line, comma-separated rationals, `#` comments.
pub fn parse_points_file(text: &str) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let body = body.trim_start_matches('(').trim_end_matches(')');
        let coords: Vec<Rational> = body
            .split(',')
            .map(|s| parse_rational(s).map_err(|_| syntax(idx + 1, 1, format!("invalid rational `{}`", s.trim()))))
            .collect::<Result<_>>()?;
        if coords.len() != DIM {
            return Err(syntax(idx + 1, 1, format!("a point needs 5 coordinates, got {}", coords.len())));
        }
        out.push(Point::new(std::array::from_fn(|i| coords[i].clone())));
    }
    Ok(out)
}

/// Comma-separated rationals, e.g. a witness point on the command line.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }
    fn dx(i: usize) -> KForm {
        KForm::dx(i)
    }
    const HEAD: &str = "chart (x,y,p,q,z)\n";

    fn form(doc: &ChartDocument, name: &str) -> KForm {
        match doc.get(name) {
            Some(Item::Form(f)) => f.clone(),
            other => panic!("{name}: {other:?}"),
        }
    }

    #[test]
    fn parse_examples() {
        let doc = parse_chart("chart (x,y,p,q,z)\nform a1 = d(y) - p*d(x)").unwrap();
        assert_eq!(form(&doc, "a1"), &dx(2) - &dx(1).scale(&x(3)));

        let doc = parse_chart(&format!("{HEAD}form w = d(x)^d(x)")).unwrap();
        let w = form(&doc, "w");
        assert!(w.is_zero());
        assert_eq!(w.degree(), 2);

        assert_eq!(parse_chart("chart (x,y)"), Err(Error::Arity(2)));
    }

    #[test]
    fn hilbert_cartan_document() {
        let text = format!(
            "{HEAD}# adapted coframe\nform a1 = d(y) - p*d(x)\nform a2 = 1/2*d(z) - q*d(p) + 1/2*q^2*d(x)\nform a3 = q*d(x) - d(p)\nform da1 = d(a1)\nfield Y = d(x) + p*d(y) + q*d(p) + q^2*d(z)\npoints P = (0,0,0,0,0), (1/2, -3, 0, 2, 7)\n"
        );
        let doc = parse_chart(&text).unwrap();
        let a2 = form(&doc, "a2");
        let expected = &(&dx(5).scale_rational(&rat(1, 2)) - &dx(3).scale(&x(4))) + &dx(1).scale(&x(4).pow(2).scale(&rat(1, 2)));
        assert_eq!(a2, expected);
        assert_eq!(form(&doc, "da1"), dx(1).wedge(&dx(3)));
        match doc.get("Y") {
            Some(Item::Field(v)) => assert_eq!(v.component(5), &x(4).pow(2)),
            other => panic!("{other:?}"),
        }
        assert_eq!(doc.points().len(), 2);
        assert_eq!(doc.points()[1].coords()[1], int(-3));
    }

    #[test]
    fn precedence() {
        let doc = parse_chart(&format!("{HEAD}form f = -x^2*y + 2*(x + 1)^3")).unwrap();
        let expected = &(-&(&x(1).pow(2) * &x(2))) + &(&x(1) + &Poly::one()).pow(3).scale(&int(2));
        assert_eq!(form(&doc, "f"), KForm::function(expected));
        let doc = parse_chart(&format!("{HEAD}form g = x*d(y)^d(p)")).unwrap();
        assert_eq!(form(&doc, "g"), dx(2).wedge(&dx(3)).scale(&x(1)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_chart(&format!("{HEAD}form a = d(x) + w")) {
            Err(Error::UnknownIdentifier { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("w", 2, 17));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_chart(&format!("{HEAD}form a = d(x) + x")), Err(Error::Type { line: 2, .. })));
        assert!(matches!(parse_chart(&format!("{HEAD}form a = d(x) * d(y)")), Err(Error::Type { .. })));
        assert!(matches!(parse_chart(&format!("{HEAD}form a = (d(x)")), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_chart(&format!("{HEAD}form a = 1/0")), Err(Error::Syntax { .. })));
        assert!(matches!(parse_chart("form a = x"), Err(Error::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(parse_chart("chart (x,y,x,q,z)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_chart(&format!("{HEAD}form a = x\nform a = y")), Err(Error::Syntax { .. })));
        assert!(matches!(parse_chart(&format!("{HEAD}points P = (1,2,3)")), Err(Error::Syntax { .. })));
        assert!(matches!(parse_chart(&format!("{HEAD}field V = d(x)^d(y)")), Err(Error::Type { .. })));
        let big = format!("{HEAD}form a = d(x)^d(y)^d(p)\nform b = a^a");
        assert!(matches!(parse_chart(&big), Err(Error::Type { .. })));
        assert!(matches!(parse_chart(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn round_trip() {
        let text = format!(
            "{HEAD}form a = 1/2*d(z) - q*d(p) + 1/2*q^2*d(x)\nform w = d(x)^d(x)\nform f = -3/7\nform v = 0\nfield Y = d(x) + p*d(y) - q^2*d(z)\nfield Z = 0\npoints P = (0,-1/2,0,0,3)\n"
        );
        let doc = parse_chart(&text).unwrap();
        let printed = doc.pretty();
        let again = parse_chart(&printed).unwrap();
        assert_eq!(doc, again);
        assert_eq!(printed, again.pretty());
    }

    #[test]
    fn points_file() {
        let pts = parse_points_file("# two points\n0,0,0,0,0\n1/2, -1, 3, 0, 0  # trailing\n").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].coords()[0], rat(1, 2));
        assert!(parse_points_file("1,2").is_err());
        assert!(parse_points_file("1,2,3,4,x").is_err());
    }
}
