use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use crate::error::{Error, Result};
use crate::C64;

/// A linear map from `arity_in` qubits to `arity_out` qubits.
///
/// The matrix is stored row-major with `2^arity_out` rows and `2^arity_in`
/// columns. Basis strings are big-endian: the first listed wire is the most
/// significant bit of the row (or column) index. Nothing requires the map to
/// be unitary.
#[derive(Clone, PartialEq)]
pub struct LinearGate {
    arity_in: usize,
    arity_out: usize,
    matrix: Vec<C64>,
}

impl LinearGate {
    pub fn new(arity_in: usize, arity_out: usize, matrix: Vec<C64>) -> Result<Self> {
        if arity_in == 0 && arity_out == 0 {
            return Err(Error::EmptyGate);
        }
        let expected = 1usize
            .checked_shl((arity_in + arity_out) as u32)
            .filter(|_| arity_in + arity_out < 32)
            .ok_or(Error::CapExceeded {
                what: "gate arity",
                got: arity_in + arity_out,
                cap: 31,
            })?;
        if matrix.len() != expected {
            return Err(Error::GateShape {
                arity_in,
                arity_out,
                expected,
                got: matrix.len(),
            });
        }
        if let Some(index) = matrix.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry { index });
        }
        Ok(Self {
            arity_in,
            arity_out,
            matrix,
        })
    }

    /// Builds a gate from real entries.
    pub fn from_real(arity_in: usize, arity_out: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            arity_in,
            arity_out,
            entries.iter().map(|&re| C64::new(re, 0.0)).collect(),
        )
    }

    pub fn arity_in(&self) -> usize {
        self.arity_in
    }

    pub fn arity_out(&self) -> usize {
        self.arity_out
    }

    pub fn rows(&self) -> usize {
        1 << self.arity_out
    }

    pub fn cols(&self) -> usize {
        1 << self.arity_in
    }

    /// Row-major entries.
    pub fn matrix(&self) -> &[C64] {
        &self.matrix
    }

    /// `<row| g |col>`.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[row * self.cols() + col]
    }

    /// The conjugate transpose, mapping `arity_out` qubits back to `arity_in`.
    pub fn adjoint(&self) -> Self {
        let (rows, cols) = (self.rows(), self.cols());
        let mut matrix = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                matrix.push(self.matrix[r * cols + c].conj());
            }
        }
        Self {
            arity_in: self.arity_out,
            arity_out: self.arity_in,
            matrix,
        }
    }

    /// Applies the gate to a vector over its input wires.
    pub fn apply(&self, input: &[C64]) -> Vec<C64> {
        assert_eq!(input.len(), self.cols(), "input vector length");
        let cols = self.cols();
        (0..self.rows())
            .map(|r| {
                self.matrix[r * cols..(r + 1) * cols]
                    .iter()
                    .zip(input)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Largest entrywise distance to another gate of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.arity_in, self.arity_out),
            (other.arity_in, other.arity_out)
        );
        self.matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `G G*` equals the identity within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if self.arity_in != self.arity_out {
            return false;
        }
        let n = self.rows();
        for i in 0..n {
            for j in 0..n {
                let dot: C64 = (0..n).map(|k| self.entry(i, k) * self.entry(j, k).conj()).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                if (dot - C64::new(expect, 0.0)).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn hadamard() -> Self {
        let h = FRAC_1_SQRT_2;
        Self::from_real(1, 1, &[h, h, h, -h]).unwrap()
    }

    pub fn pauli_x() -> Self {
        Self::from_real(1, 1, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn identity(qubits: usize) -> Self {
        let n = 1 << qubits;
        let mut m = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            m[i * n + i] = C64::new(1.0, 0.0);
        }
        Self::new(qubits, qubits, m).unwrap()
    }

    /// Controlled NOT, control on the first wire.
    pub fn cnot() -> Self {
        #[rustfmt::skip]
        let m = [
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 1.0, 0.0,
        ];
        Self::from_real(2, 2, &m).unwrap()
    }

    /// `|b> -> |b>|b>`.
    pub fn copy() -> Self {
        Self::from_real(1, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap()
    }

    /// `|0>, |1> -> 1`.
    pub fn erase() -> Self {
        Self::from_real(1, 0, &[1.0, 1.0]).unwrap()
    }

    /// `1 -> |0>`.
    pub fn prep0() -> Self {
        Self::from_real(0, 1, &[1.0, 0.0]).unwrap()
    }

    /// `|x>|y> -> e^{2 pi i theta x y} |x>|y>`.
    pub fn cphase(theta: f64) -> Self {
        let mut m = vec![C64::new(0.0, 0.0); 16];
        m[0] = C64::new(1.0, 0.0);
        m[5] = C64::new(1.0, 0.0);
        m[10] = C64::new(1.0, 0.0);
        m[15] = C64::from_polar(1.0, 2.0 * PI * theta);
        Self::new(2, 2, m).unwrap()
    }

    /// Projector onto `|0>` on one wire, `diag(1, 0)`.
    pub fn projector0() -> Self {
        Self::from_real(1, 1, &[1.0, 0.0, 0.0, 0.0]).unwrap()
    }
}

impl fmt::Debug for LinearGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearGate({} -> {}) [", self.arity_in, self.arity_out)?;
        for (i, z) in self.matrix.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}{:+}i", z.re, z.im)?;
        }
        write!(f, "]")
    }
}

/// Gates that the circuit file format can refer to by name alone.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Builtin {
    H,
    X,
    Cnot,
    Copy,
    Erase,
    Prep0,
    Proj0,
    Identity,
    Cphase(f64),
}

impl Builtin {
    pub fn parse(name: &str) -> Option<Self> {
        let name = name.trim();
        let b = match name.to_ascii_uppercase().as_str() {
            "H" => Builtin::H,
            "X" => Builtin::X,
            "CNOT" => Builtin::Cnot,
            "COPY" => Builtin::Copy,
            "ERASE" => Builtin::Erase,
            "PREP0" => Builtin::Prep0,
            "PROJ0" => Builtin::Proj0,
            "I" => Builtin::Identity,
            upper => {
                let arg = upper.strip_prefix("CPHASE(")?.strip_suffix(')')?;
                let theta: f64 = arg.trim().parse().ok()?;
                if !theta.is_finite() {
                    return None;
                }
                Builtin::Cphase(theta)
            }
        };
        Some(b)
    }

    pub fn gate(self) -> LinearGate {
        match self {
            Builtin::H => LinearGate::hadamard(),
            Builtin::X => LinearGate::pauli_x(),
            Builtin::Cnot => LinearGate::cnot(),
            Builtin::Copy => LinearGate::copy(),
            Builtin::Erase => LinearGate::erase(),
            Builtin::Prep0 => LinearGate::prep0(),
            Builtin::Proj0 => LinearGate::projector0(),
            Builtin::Identity => LinearGate::identity(1),
            Builtin::Cphase(theta) => LinearGate::cphase(theta),
        }
    }

    pub fn name(self) -> String {
        match self {
            Builtin::H => "H".into(),
            Builtin::X => "X".into(),
            Builtin::Cnot => "CNOT".into(),
            Builtin::Copy => "COPY".into(),
            Builtin::Erase => "ERASE".into(),
            Builtin::Prep0 => "PREP0".into(),
            Builtin::Proj0 => "PROJ0".into(),
            Builtin::Identity => "I".into(),
            Builtin::Cphase(theta) => format!("CPHASE({theta})"),
        }
    }
}
