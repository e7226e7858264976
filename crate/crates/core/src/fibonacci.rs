//! Fibonacci numbers `u_0 = 0, u_1 = 1, u_{n+1} = u_n + u_{n-1}`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// The first terms of the sequence, extended on demand.
#[derive(Debug, Clone)]
pub struct FibonacciNumbers {
    terms: Vec<BigUint>,
}

impl Default for FibonacciNumbers {
    fn default() -> Self {
        FibonacciNumbers { terms: vec![BigUint::zero(), BigUint::one()] }
    }
}

impl FibonacciNumbers {
    pub fn new() -> Self {
        Self::default()
    }

    /// `u_n`.
    pub fn get(&mut self, n: usize) -> &BigUint {
        while self.terms.len() <= n {
            let k = self.terms.len();
            let next = &self.terms[k - 1] + &self.terms[k - 2];
            self.terms.push(next);
        }
        &self.terms[n]
    }
}

pub fn fibonacci(n: usize) -> BigUint {
    FibonacciNumbers::new().get(n).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn first_terms() {
        let mut u = FibonacciNumbers::new();
        let got: Vec<u64> = (0..10).map(|n| u.get(n).try_into().unwrap()).collect();
        assert_eq!(got, vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn cassini_identity() {
        let mut u = FibonacciNumbers::new();
        for n in 1..200 {
            let lhs = BigInt::from(u.get(n + 1).clone()) * BigInt::from(u.get(n - 1).clone())
                - BigInt::from(u.get(n).clone()).pow(2);
            let rhs = if n % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }
}
