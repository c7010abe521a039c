use std::collections::HashMap;

use serde::Serialize;

use super::ast::Expr;
use crate::algebra::{CStarObject, PureObject};
use crate::error::{Error, Result};

/// The type of a circuit: an isometry between dimensions, or a channel
/// between C*-objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "level", rename_all = "lowercase")]
pub enum CircuitType {
    Pure { dom: usize, cod: usize },
    Channel { dom: CStarObject, cod: CStarObject },
}

impl CircuitType {
    pub fn is_pure(&self) -> bool {
        matches!(self, CircuitType::Pure { .. })
    }

    /// The channel-level type, promoting `n ↦ [n]`.
    pub fn promoted(&self) -> (CStarObject, CStarObject) {
        match self {
            CircuitType::Pure { dom, cod } => {
                (PureObject(*dom).promote(), PureObject(*cod).promote())
            }
            CircuitType::Channel { dom, cod } => (dom.clone(), cod.clone()),
        }
    }
}

pub fn typecheck(e: &Expr) -> Result<CircuitType> {
    Checker { pure_only: false }.check(e, &mut HashMap::new())
}

/// Like [`typecheck`], but rejects measurement and discarding anywhere.
pub fn typecheck_pure(e: &Expr) -> Result<CircuitType> {
    Checker { pure_only: true }.check(e, &mut HashMap::new())
}

fn positive(dims: &[usize], what: &str) -> Result<CStarObject> {
    CStarObject::new(dims.to_vec())
        .map_err(|_| Error::Type(format!("{what} needs positive block dimensions")))
}

struct Checker {
    pure_only: bool,
}

impl Checker {
    fn check(&self, e: &Expr, env: &mut HashMap<String, CircuitType>) -> Result<CircuitType> {
        use CircuitType::{Channel, Pure};
        let square = |n| Pure { dom: n, cod: n };
        Ok(match e {
            Expr::Gate(g) => square(g.dim()),
            Expr::Id(n) => square(*n),
            Expr::Phase(_) => square(1),
            Expr::Init { m, n } => {
                if m > n {
                    return Err(Error::Type(format!("init[{m},{n}] needs {m} <= {n}")));
                }
                Pure { dom: *m, cod: *n }
            }
            Expr::Gamma { n, m } => square(n + m),
            Expr::SwapFactors { n, m } => square(n * m),
            Expr::Measure(dims) | Expr::Discard(dims) => {
                let is_measure = matches!(e, Expr::Measure(_));
                let what = if is_measure { "measure" } else { "discard" };
                if self.pure_only {
                    return Err(Error::Type(format!(
                        "{what} is not allowed in a pure circuit"
                    )));
                }
                let obj = positive(dims, what)?;
                if is_measure {
                    Channel {
                        dom: CStarObject::single(obj.total_dim()),
                        cod: obj,
                    }
                } else {
                    Channel {
                        dom: obj,
                        cod: CStarObject::unit(),
                    }
                }
            }
            Expr::Seq(a, b) => {
                let (ta, tb) = (self.check(a, env)?, self.check(b, env)?);
                match (&ta, &tb) {
                    (Pure { dom, cod }, Pure { dom: d2, cod: c2 }) => {
                        if cod != d2 {
                            return Err(Error::Type(format!(
                                "cannot follow {dom}→{cod} with {d2}→{c2}"
                            )));
                        }
                        Pure {
                            dom: *dom,
                            cod: *c2,
                        }
                    }
                    _ => {
                        let ((d1, c1), (d2, c2)) = (ta.promoted(), tb.promoted());
                        if c1 != d2 {
                            return Err(Error::Type(format!(
                                "cannot follow {d1}→{c1} with {d2}→{c2}"
                            )));
                        }
                        Channel { dom: d1, cod: c2 }
                    }
                }
            }
            Expr::Oplus(a, b) | Expr::Otimes(a, b) => {
                let sum = matches!(e, Expr::Oplus(..));
                let (ta, tb) = (self.check(a, env)?, self.check(b, env)?);
                match (&ta, &tb) {
                    (Pure { dom, cod }, Pure { dom: d2, cod: c2 }) => {
                        if sum {
                            Pure {
                                dom: dom + d2,
                                cod: cod + c2,
                            }
                        } else {
                            Pure {
                                dom: dom * d2,
                                cod: cod * c2,
                            }
                        }
                    }
                    _ => {
                        let ((d1, c1), (d2, c2)) = (ta.promoted(), tb.promoted());
                        if sum {
                            Channel {
                                dom: d1.oplus(&d2),
                                cod: c1.oplus(&c2),
                            }
                        } else {
                            Channel {
                                dom: d1.otimes(&d2),
                                cod: c1.otimes(&c2),
                            }
                        }
                    }
                }
            }
            Expr::Var(name) => env
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Type(format!("unbound name '{name}'")))?,
            Expr::Let { name, value, body } => {
                let t = self.check(value, env)?;
                let saved = env.insert(name.clone(), t);
                let result = self.check(body, env);
                match saved {
                    Some(old) => env.insert(name.clone(), old),
                    None => env.remove(name),
                };
                result?
            }
        })
    }
}
