use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    H,
    T,
    S,
    X,
    Z,
    Swap,
    Cnot,
}

impl Gate {
    pub const ALL: [Gate; 7] = [
        Gate::H,
        Gate::T,
        Gate::S,
        Gate::X,
        Gate::Z,
        Gate::Swap,
        Gate::Cnot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gate::H => "H",
            Gate::T => "T",
            Gate::S => "S",
            Gate::X => "X",
            Gate::Z => "Z",
            Gate::Swap => "swap",
            Gate::Cnot => "cnot",
        }
    }

    pub fn from_name(name: &str) -> Option<Gate> {
        Gate::ALL.into_iter().find(|g| g.name() == name)
    }

    /// Dimension of the (square) gate.
    pub fn dim(self) -> usize {
        match self {
            Gate::Swap | Gate::Cnot => 4,
            _ => 2,
        }
    }
}

/// A phase angle, kept exact when written as a rational multiple of π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// `num·π/den` in lowest terms with `den > 0`.
    Pi {
        num: i64,
        den: i64,
    },
    Radians(f64),
}

impl Angle {
    pub fn pi(num: i64, den: i64) -> Angle {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Angle::Pi {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn radians(self) -> f64 {
        match self {
            Angle::Pi { num, den } => PI * num as f64 / den as f64,
            Angle::Radians(r) => r,
        }
    }

    fn negated(self) -> Angle {
        match self {
            Angle::Pi { num, den } => Angle::Pi { num: -num, den },
            Angle::Radians(r) => Angle::Radians(-r),
        }
    }

    pub(crate) fn negate_if(self, neg: bool) -> Angle {
        if neg {
            self.negated()
        } else {
            self
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Pi { num, den } => {
                match num {
                    1 => write!(f, "pi")?,
                    -1 => write!(f, "-pi")?,
                    n => write!(f, "{n}*pi")?,
                }
                if den != 1 {
                    write!(f, "/{den}")?;
                }
                Ok(())
            }
            Angle::Radians(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Gate(Gate),
    Id(usize),
    Phase(Angle),
    /// `ι: m → n`; with `m = 0` this is `⊥_n`.
    Init {
        m: usize,
        n: usize,
    },
    /// `[Σ dims] → dims`.
    Measure(Vec<usize>),
    /// `dims → [1]`.
    Discard(Vec<usize>),
    /// `γ_{n,m}: n ⊕ m → m ⊕ n`.
    Gamma {
        n: usize,
        m: usize,
    },
    /// `γ′_{n,m}: n ⊗ m → m ⊗ n`.
    SwapFactors {
        n: usize,
        m: usize,
    },
    /// Left operand applied first.
    Seq(Box<Expr>, Box<Expr>),
    Oplus(Box<Expr>, Box<Expr>),
    Otimes(Box<Expr>, Box<Expr>),
    Var(String),
    Let {
        name: String,
        value: Box<Expr>,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn seq(a: Expr, b: Expr) -> Expr {
        Expr::Seq(Box::new(a), Box::new(b))
    }

    pub fn oplus(a: Expr, b: Expr) -> Expr {
        Expr::Oplus(Box::new(a), Box::new(b))
    }

    pub fn otimes(a: Expr, b: Expr) -> Expr {
        Expr::Otimes(Box::new(a), Box::new(b))
    }

    fn precedence(&self) -> i8 {
        match self {
            Expr::Let { .. } => -1,
            Expr::Seq(..) => 0,
            Expr::Oplus(..) => 1,
            Expr::Otimes(..) => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: i8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, -1)?;
            return write!(f, ")");
        }
        let list = |xs: &[usize]| {
            xs.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Expr::Gate(g) => write!(f, "{}", g.name()),
            Expr::Id(n) => write!(f, "id[{n}]"),
            Expr::Phase(a) => write!(f, "phase({a})"),
            Expr::Init { m, n } => write!(f, "init[{m},{n}]"),
            Expr::Measure(d) => write!(f, "measure[{}]", list(d)),
            Expr::Discard(d) => write!(f, "discard[{}]", list(d)),
            Expr::Gamma { n, m } => write!(f, "gamma[{n},{m}]"),
            Expr::SwapFactors { n, m } => write!(f, "swap[{n},{m}]"),
            Expr::Var(name) => write!(f, "{name}"),
            Expr::Seq(a, b) => binary(f, a, " ; ", b, 0),
            Expr::Oplus(a, b) => binary(f, a, " (+) ", b, 1),
            Expr::Otimes(a, b) => binary(f, a, " (x) ", b, 2),
            Expr::Let { name, value, body } => {
                write!(f, "let {name} = ")?;
                value.write_at(f, 0)?;
                writeln!(f)?;
                body.write_at(f, -1)
            }
        }
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, level: i8) -> fmt::Result {
    a.write_at(f, level)?;
    write!(f, "{op}")?;
    b.write_at(f, level + 1)
}

/// Prints normalized source; parsing the output yields an equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, -1)
    }
}
