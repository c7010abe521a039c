use std::collections::HashMap;

use serde::Serialize;

use super::ast::{Expr, Gate};
use super::parser::parse;
use super::types::typecheck;
use crate::algebra::{
    compose, embed, oplus, otimes, pure, structural, CStarObject, Channel, Structural,
};
use crate::error::Result;
use crate::linalg::{direct_sum, kron, Matrix, C64};

/// The denotation of a circuit. Serializes as the bare matrix or channel.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Value {
    Pure(Matrix),
    Channel(Channel),
}

impl Value {
    /// The channel-level denotation, embedding isometries.
    pub fn into_channel(self) -> Result<Channel> {
        match self {
            Value::Pure(v) => embed(&v),
            Value::Channel(c) => Ok(c),
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            Value::Pure(v) => Some(v),
            Value::Channel(_) => None,
        }
    }
}

fn gate_matrix(g: Gate) -> Matrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let phase = |theta: f64| Matrix::diag(&[C64::new(1.0, 0.0), C64::from_polar(1.0, theta)]);
    match g {
        Gate::H => Matrix::from_real_rows(&[&[r, r], &[r, -r]]),
        Gate::T => phase(std::f64::consts::FRAC_PI_4),
        Gate::S => phase(std::f64::consts::FRAC_PI_2),
        Gate::X => pure::gamma_plus(1, 1),
        Gate::Z => Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]),
        Gate::Swap => pure::gamma_times(2, 2),
        Gate::Cnot => direct_sum(&Matrix::identity(2), &pure::gamma_plus(1, 1)),
    }
}

/// Typechecks, then evaluates.
pub fn evaluate(e: &Expr) -> Result<Value> {
    typecheck(e)?;
    eval(e, &mut HashMap::new())
}

/// Parses and evaluates source text.
pub fn compile(src: &str) -> Result<Value> {
    evaluate(&parse(src)?)
}

fn eval(e: &Expr, env: &mut HashMap<String, Value>) -> Result<Value> {
    Ok(match e {
        Expr::Gate(g) => Value::Pure(gate_matrix(*g)),
        Expr::Id(n) => Value::Pure(Matrix::identity(*n)),
        Expr::Phase(a) => Value::Pure(Matrix::scalar(C64::from_polar(1.0, a.radians()))),
        Expr::Init { m, n } => Value::Pure(pure::iota(*m, *n)),
        Expr::Gamma { n, m } => Value::Pure(pure::gamma_plus(*n, *m)),
        Expr::SwapFactors { n, m } => Value::Pure(pure::gamma_times(*n, *m)),
        Expr::Measure(dims) => Value::Channel(structural(&Structural::Measure(dims.clone()))?),
        Expr::Discard(dims) => Value::Channel(structural(&Structural::Terminal(
            CStarObject::new(dims.clone())?,
        ))?),
        Expr::Seq(a, b) => match (eval(a, env)?, eval(b, env)?) {
            (Value::Pure(x), Value::Pure(y)) => Value::Pure(y.matmul(&x)?),
            (x, y) => Value::Channel(compose(&y.into_channel()?, &x.into_channel()?)?),
        },
        Expr::Oplus(a, b) => match (eval(a, env)?, eval(b, env)?) {
            (Value::Pure(x), Value::Pure(y)) => Value::Pure(direct_sum(&x, &y)),
            (x, y) => Value::Channel(oplus(&x.into_channel()?, &y.into_channel()?)?),
        },
        Expr::Otimes(a, b) => match (eval(a, env)?, eval(b, env)?) {
            (Value::Pure(x), Value::Pure(y)) => Value::Pure(kron(&x, &y)),
            (x, y) => Value::Channel(otimes(&x.into_channel()?, &y.into_channel()?)?),
        },
        Expr::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| crate::Error::Type(format!("unbound name '{name}'")))?,
        Expr::Let { name, value, body } => {
            let v = eval(value, env)?;
            let saved = env.insert(name.clone(), v);
            let result = eval(body, env);
            match saved {
                Some(old) => env.insert(name.clone(), old),
                None => env.remove(name),
            };
            result?
        }
    })
}
