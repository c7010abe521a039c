use super::ast::{Angle, Expr, Gate};
use super::lexer::{syntax, tokenize, Tok, Token};
use crate::error::{Error, Result};

const RESERVED: [&str; 9] = [
    "let", "pi", "id", "phase", "init", "measure", "discard", "gamma", "swap",
];

/// Parses a program: any number of `let name = expr` bindings followed by
/// the expression they scope over.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        pos: 0,
    };
    let e = p.program()?;
    p.expect(&Tok::Eof, "end of input")?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.tokens[self.pos];
        syntax(t.line, t.column, message)
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn program(&mut self) -> Result<Expr> {
        if !self.is_keyword("let") {
            return self.expr();
        }
        self.next();
        let name = match self.next() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) && Gate::from_name(&s).is_none() => s,
            Tok::Ident(s) => {
                self.pos -= 1;
                return Err(self.error(format!("'{s}' is reserved")));
            }
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected a name, found {}", describe(&other))));
            }
        };
        self.expect(&Tok::Eq, "'='")?;
        let value = self.expr()?;
        let body = self.program()?;
        Ok(Expr::Let {
            name,
            value: Box::new(value),
            body: Box::new(body),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        while self.eat(&Tok::Semi) {
            e = Expr::seq(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        while self.eat(&Tok::Oplus) {
            e = Expr::oplus(e, self.factor()?);
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while self.eat(&Tok::Otimes) {
            e = Expr::otimes(e, self.atom()?);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let e = self.program()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if name == "let" || name == "pi" {
                    return Err(self.error(format!("unexpected '{name}'")));
                }
                self.next();
                match name.as_str() {
                    "swap" if *self.peek() == Tok::LBrack => {
                        let (n, m) = self.pair()?;
                        Ok(Expr::SwapFactors { n, m })
                    }
                    "id" => Ok(Expr::Id(self.single()?)),
                    "phase" => {
                        self.expect(&Tok::LParen, "'('")?;
                        let a = self.angle()?;
                        self.expect(&Tok::RParen, "')'")?;
                        Ok(Expr::Phase(a))
                    }
                    "init" => {
                        let (m, n) = self.pair()?;
                        Ok(Expr::Init { m, n })
                    }
                    "gamma" => {
                        let (n, m) = self.pair()?;
                        Ok(Expr::Gamma { n, m })
                    }
                    "measure" => Ok(Expr::Measure(self.nat_list()?)),
                    "discard" => Ok(Expr::Discard(self.nat_list()?)),
                    _ => Ok(Gate::from_name(&name).map_or(Expr::Var(name), Expr::Gate)),
                }
            }
            other => Err(self.error(format!("expected a circuit, found {}", describe(&other)))),
        }
    }

    fn nat(&mut self) -> Result<usize> {
        match self.peek().clone() {
            Tok::Num(s) if !s.contains('.') => {
                let n = s
                    .parse()
                    .map_err(|_| self.error(format!("number {s} is too large")))?;
                self.next();
                Ok(n)
            }
            other => Err(self.error(format!(
                "expected a natural number, found {}",
                describe(&other)
            ))),
        }
    }

    fn nat_list(&mut self) -> Result<Vec<usize>> {
        self.expect(&Tok::LBrack, "'['")?;
        let mut xs = vec![self.nat()?];
        while self.eat(&Tok::Comma) {
            xs.push(self.nat()?);
        }
        self.expect(&Tok::RBrack, "']'")?;
        Ok(xs)
    }

    fn single(&mut self) -> Result<usize> {
        self.expect(&Tok::LBrack, "'['")?;
        let n = self.nat()?;
        self.expect(&Tok::RBrack, "']'")?;
        Ok(n)
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        self.expect(&Tok::LBrack, "'['")?;
        let a = self.nat()?;
        self.expect(&Tok::Comma, "','")?;
        let b = self.nat()?;
        self.expect(&Tok::RBrack, "']'")?;
        Ok((a, b))
    }

    /// `['-'] ( pi ['/' nat] | nat '*' pi ['/' nat] | decimal )`
    fn angle(&mut self) -> Result<Angle> {
        let neg = self.eat(&Tok::Minus);
        let angle = if self.is_keyword("pi") {
            self.next();
            self.pi_multiple(1)?
        } else {
            match self.peek().clone() {
                Tok::Num(s) => {
                    self.next();
                    if self.eat(&Tok::Star) {
                        if s.contains('.') || !self.is_keyword("pi") {
                            return Err(self.error("only integer multiples of pi are supported"));
                        }
                        self.next();
                        let num = s
                            .parse()
                            .map_err(|_| self.error("coefficient is too large"))?;
                        self.pi_multiple(num)?
                    } else {
                        Angle::Radians(s.parse().expect("lexer produces valid decimals"))
                    }
                }
                other => {
                    return Err(self.error(format!("expected an angle, found {}", describe(&other))))
                }
            }
        };
        Ok(angle.negate_if(neg))
    }

    fn pi_multiple(&mut self, num: i64) -> Result<Angle> {
        let den = if self.eat(&Tok::Slash) {
            self.nat()?
        } else {
            1
        };
        if den == 0 {
            return Err(self.error("division by zero in angle"));
        }
        Ok(Angle::pi(num, den as i64))
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Num(s) => format!("number {s}"),
        Tok::Semi => "';'".into(),
        Tok::Oplus => "'(+)'".into(),
        Tok::Otimes => "'(x)'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBrack => "'['".into(),
        Tok::RBrack => "']'".into(),
        Tok::Comma => "','".into(),
        Tok::Eq => "'='".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Eof => "end of input".into(),
    }
}
