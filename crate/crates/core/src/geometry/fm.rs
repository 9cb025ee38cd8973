//! Exact real feasibility of small linear systems by Fourier-Motzkin elimination.

use num_integer::Integer;

use crate::error::{Error, Result};

/// `<coeffs, x> >= rhs`, or `> rhs` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<i128>,
    pub rhs: i128,
    pub strict: bool,
}

impl LinearConstraint {
    pub fn ge(coeffs: Vec<i128>, rhs: i128) -> Self {
        LinearConstraint { coeffs, rhs, strict: false }
    }

    pub fn gt(coeffs: Vec<i128>, rhs: i128) -> Self {
        LinearConstraint { coeffs, rhs, strict: true }
    }

    fn normalized(mut self) -> Self {
        let g = self.coeffs.iter().fold(self.rhs.abs(), |g, c| g.gcd(c));
        if g > 1 {
            self.coeffs.iter_mut().for_each(|c| *c /= g);
            self.rhs /= g;
        }
        self
    }
}

fn combine(pos: &LinearConstraint, neg: &LinearConstraint, var: usize) -> Result<LinearConstraint> {
    let a = pos.coeffs[var];
    let b = -neg.coeffs[var];
    let mul = |x: i128, y: i128| x.checked_mul(y).ok_or(Error::Overflow);
    let mut coeffs = Vec::with_capacity(pos.coeffs.len());
    for (p, n) in pos.coeffs.iter().zip(&neg.coeffs) {
        coeffs.push(mul(*p, b)?.checked_add(mul(*n, a)?).ok_or(Error::Overflow)?);
    }
    let rhs = mul(pos.rhs, b)?.checked_add(mul(neg.rhs, a)?).ok_or(Error::Overflow)?;
    Ok(LinearConstraint { coeffs, rhs, strict: pos.strict || neg.strict }.normalized())
}

/// Whether some real point satisfies every constraint.
pub fn feasible(constraints: &[LinearConstraint]) -> Result<bool> {
    let Some(first) = constraints.first() else {
        return Ok(true);
    };
    let vars = first.coeffs.len();
    let mut system: Vec<LinearConstraint> = constraints.iter().cloned().map(|c| c.normalized()).collect();
    for var in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in system {
            match c.coeffs[var].signum() {
                1 => pos.push(c),
                -1 => neg.push(c),
                _ => rest.push(c),
            }
        }
        for p in &pos {
            for n in &neg {
                rest.push(combine(p, n, var)?);
            }
        }
        rest.sort_by(|a, b| (&a.coeffs, a.rhs, a.strict).cmp(&(&b.coeffs, b.rhs, b.strict)));
        rest.dedup();
        system = rest;
    }
    Ok(system.iter().all(|c| if c.strict { 0 > c.rhs } else { 0 >= c.rhs }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_feasibility() {
        // x >= 1, -x >= -2
        assert!(feasible(&[LinearConstraint::ge(vec![1], 1), LinearConstraint::ge(vec![-1], -2)]).unwrap());
        // x >= 2, -x >= -1
        assert!(!feasible(&[LinearConstraint::ge(vec![1], 2), LinearConstraint::ge(vec![-1], -1)]).unwrap());
        // x > 0, -x >= 0
        assert!(!feasible(&[LinearConstraint::gt(vec![1], 0), LinearConstraint::ge(vec![-1], 0)]).unwrap());
        assert!(feasible(&[LinearConstraint::ge(vec![1], 0), LinearConstraint::ge(vec![-1], 0)]).unwrap());
    }

    #[test]
    fn three_variable_system() {
        // x, y, z > 0 and x + y + z < 0 is infeasible
        let mut cs: Vec<_> = (0..3)
            .map(|i| {
                let mut c = vec![0; 3];
                c[i] = 1;
                LinearConstraint::gt(c, 0)
            })
            .collect();
        cs.push(LinearConstraint::gt(vec![-1, -1, -1], 0));
        assert!(!feasible(&cs).unwrap());
        cs.pop();
        cs.push(LinearConstraint::gt(vec![-1, -1, 2], 0));
        assert!(feasible(&cs).unwrap());
    }
}
