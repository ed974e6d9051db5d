//! Small integer expressions over named parameters.
//!
//! Family entries in the data files carry ranks and levels such as
//! `n(4n+1)/2` that must evaluate exactly for each parameter assignment.
//! Division is exact division: a nonzero remainder is an error, never a
//! truncation.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

/// Evaluation error for an [`IntExpr`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExprError {
    UnknownVariable(String),
    DivisionByZero,
    /// Exact division left a remainder.
    NotExact { dividend: i64, divisor: i64 },
    Overflow,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            ExprError::DivisionByZero => write!(f, "division by zero"),
            ExprError::NotExact { dividend, divisor } => {
                write!(f, "{dividend} is not divisible by {divisor}")
            }
            ExprError::Overflow => write!(f, "integer overflow"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExprError {}

/// Integer expression tree with named variables and exact division.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntExpr {
    Const(i64),
    Var(String),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
    /// Exact division; evaluation fails on a nonzero remainder.
    Div(Box<IntExpr>, Box<IntExpr>),
    Neg(Box<IntExpr>),
}

impl IntExpr {
    pub fn constant(v: i64) -> Self {
        IntExpr::Const(v)
    }

    pub fn var(name: &str) -> Self {
        IntExpr::Var(String::from(name))
    }

    /// Evaluates under the given variable assignment.
    pub fn eval(&self, env: &BTreeMap<String, i64>) -> Result<i64, ExprError> {
        match self {
            IntExpr::Const(v) => Ok(*v),
            IntExpr::Var(name) => env
                .get(name)
                .copied()
                .ok_or_else(|| ExprError::UnknownVariable(name.clone())),
            IntExpr::Add(a, b) => a
                .eval(env)?
                .checked_add(b.eval(env)?)
                .ok_or(ExprError::Overflow),
            IntExpr::Sub(a, b) => a
                .eval(env)?
                .checked_sub(b.eval(env)?)
                .ok_or(ExprError::Overflow),
            IntExpr::Mul(a, b) => a
                .eval(env)?
                .checked_mul(b.eval(env)?)
                .ok_or(ExprError::Overflow),
            IntExpr::Div(a, b) => {
                let num = a.eval(env)?;
                let den = b.eval(env)?;
                if den == 0 {
                    return Err(ExprError::DivisionByZero);
                }
                if num % den != 0 {
                    return Err(ExprError::NotExact {
                        dividend: num,
                        divisor: den,
                    });
                }
                num.checked_div(den).ok_or(ExprError::Overflow)
            }
            IntExpr::Neg(a) => a.eval(env)?.checked_neg().ok_or(ExprError::Overflow),
        }
    }

    /// Evaluates an expression that must not reference any variable.
    pub fn eval_const(&self) -> Result<i64, ExprError> {
        self.eval(&BTreeMap::new())
    }
}

impl core::ops::Add for IntExpr {
    type Output = IntExpr;

    fn add(self, rhs: IntExpr) -> IntExpr {
        IntExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl core::ops::Sub for IntExpr {
    type Output = IntExpr;

    fn sub(self, rhs: IntExpr) -> IntExpr {
        IntExpr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl core::ops::Mul for IntExpr {
    type Output = IntExpr;

    fn mul(self, rhs: IntExpr) -> IntExpr {
        IntExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

/// Division is exact at evaluation time: a non-integral quotient is an
/// evaluation error, not a truncation.
impl core::ops::Div for IntExpr {
    type Output = IntExpr;

    fn div(self, rhs: IntExpr) -> IntExpr {
        IntExpr::Div(Box::new(self), Box::new(rhs))
    }
}
