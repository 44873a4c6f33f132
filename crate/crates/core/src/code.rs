use crate::error::{param, Result};
use crate::gf2::{gather_bits, BinMatrix, BitVector};

/// An [n,k] binary code with matching generator and parity-check matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: BinMatrix,
    parity_check: BinMatrix,
}

impl LinearCode {
    /// Code with the given generator, which must have full row rank.
    pub fn from_generator(generator: BinMatrix) -> Result<Self> {
        if generator.rank() != generator.nrows() {
            return param("generator matrix is not of full row rank");
        }
        let parity_check = generator.nullspace();
        Ok(LinearCode {
            generator,
            parity_check,
        })
    }

    /// Code spanned by arbitrary rows; the generator is their RREF basis.
    pub fn from_spanning_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        let g = BinMatrix::new(n, rows)?.row_space_basis();
        LinearCode::from_generator(g)
    }

    /// Null space of a full-row-rank parity-check matrix.
    pub fn from_parity_check(parity_check: BinMatrix) -> Result<Self> {
        if parity_check.rank() != parity_check.nrows() {
            return param("parity-check matrix is not of full row rank");
        }
        let generator = parity_check.nullspace();
        Ok(LinearCode {
            generator,
            parity_check,
        })
    }

    pub fn n(&self) -> usize {
        self.generator.ncols()
    }

    pub fn k(&self) -> usize {
        self.generator.nrows()
    }

    pub fn redundancy(&self) -> usize {
        self.n() - self.k()
    }

    pub fn generator(&self) -> &BinMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BinMatrix {
        &self.parity_check
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.dim() == self.n() && self.parity_check.mul_vec(v.bits()) == 0
    }

    pub fn encode(&self, message: u64) -> u64 {
        self.generator.left_mul(message)
    }

    /// All 2^k codewords indexed by message, zero first.
    pub fn codewords(&self) -> Vec<u64> {
        (0..1u64 << self.k()).map(|m| self.encode(m)).collect()
    }

    /// Restriction to the given coordinates (in increasing order).
    pub fn restrict(&self, positions: &[usize]) -> Result<LinearCode> {
        let rows = self
            .generator
            .rows()
            .iter()
            .map(|&r| gather_bits(r, positions))
            .collect();
        LinearCode::from_spanning_rows(positions.len(), rows)
    }
}
