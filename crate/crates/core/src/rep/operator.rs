use super::action::{check_space, Vector};
use super::module::Space;
use crate::error::{Error, Result};
use crate::field::Rf;
use crate::linalg::SparseMatrix;

/// Linear map between two tagged spaces. Rows index the codomain basis,
/// columns the domain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    domain: Space,
    codomain: Space,
    matrix: SparseMatrix,
}

impl LinearOperator {
    pub fn new(domain: Space, codomain: Space, matrix: SparseMatrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::Domain(format!(
                "{}x{} matrix does not map {domain} to {codomain}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub(crate) fn from_parts(domain: Space, codomain: Space, matrix: SparseMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), codomain.dim());
        debug_assert_eq!(matrix.cols(), domain.dim());
        Self {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(space: &Space) -> Self {
        Self::from_parts(space.clone(), space.clone(), SparseMatrix::identity(space.dim()))
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    /// Entry `<v_row | X | v_col>`.
    pub fn entry(&self, row: usize, col: usize) -> Rf {
        self.matrix.get(row, col).cloned().unwrap_or_default()
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &LinearOperator) -> Result<LinearOperator> {
        if !inner.codomain.same_as(&self.domain) {
            return Err(Error::Composition(format!(
                "cannot feed {} into a map from {}",
                inner.codomain, self.domain
            )));
        }
        Ok(Self::from_parts(
            inner.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&inner.matrix),
        ))
    }

    /// Composes a chain written left to right as in `A B C` (so `C` acts first).
    pub fn chain(ops: &[&LinearOperator]) -> Result<LinearOperator> {
        let (last, rest) = ops
            .split_last()
            .ok_or_else(|| Error::Composition("empty chain".into()))?;
        let mut acc = (*last).clone();
        for op in rest.iter().rev() {
            acc = op.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        check_space(&self.domain, v.space())?;
        Ok(Vector::from_coeffs(&self.codomain, self.matrix.apply(v.coeffs())))
    }

    /// `self ⊗ other`
    pub fn tensor(&self, other: &LinearOperator) -> Result<LinearOperator> {
        Ok(Self::from_parts(
            self.domain.tensor(&other.domain)?,
            self.codomain.tensor(&other.codomain)?,
            self.matrix.kron(&other.matrix),
        ))
    }

    /// `self ⊗ 1_space`
    pub fn then_identity(&self, space: &Space) -> Result<LinearOperator> {
        self.tensor(&Self::identity(space))
    }

    /// `1_space ⊗ self`
    pub fn after_identity(&self, space: &Space) -> Result<LinearOperator> {
        Self::identity(space).tensor(self)
    }

    pub fn scale(&self, c: &Rf) -> LinearOperator {
        Self::from_parts(self.domain.clone(), self.codomain.clone(), self.matrix.scale(c))
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.same_shape(other)?;
        Ok(Self::from_parts(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.sub(&other.matrix),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn same_shape(&self, other: &LinearOperator) -> Result<()> {
        if self.domain.same_as(&other.domain) && self.codomain.same_as(&other.codomain) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.domain, self.codomain, other.domain, other.codomain
            )))
        }
    }

    /// The scalar `c` with `self = c * other`, if one exists. Two zero
    /// operators are proportional with `c = 1`; a nonzero operator is never
    /// a multiple of zero.
    pub fn proportionality(&self, other: &LinearOperator) -> Result<Option<Rf>> {
        self.same_shape(other)?;
        let Some((r, c, b)) = other.matrix.iter().next() else {
            return Ok(self.is_zero().then(Rf::one));
        };
        let a = self.entry(r, c);
        let ratio = a.try_div(b)?;
        let ok = self.matrix.sub(&other.matrix.scale(&ratio)).is_zero();
        Ok(ok.then_some(ratio))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::module::{rational, ModuleSpec};

    #[test]
    fn composition_checks_spaces() {
        let a = Space::simple(ModuleSpec::vector(2, 1, rational(1, 1)).unwrap().build());
        let b = Space::simple(ModuleSpec::covector(2, 1, rational(1, 1)).unwrap().build());
        let ia = LinearOperator::identity(&a);
        let ib = LinearOperator::identity(&b);
        assert!(matches!(ia.compose(&ib), Err(Error::Composition(_))));
        assert_eq!(ia.compose(&ia).unwrap(), ia);
    }

    #[test]
    fn proportionality_scalar() {
        let a = Space::simple(ModuleSpec::vector(2, 1, rational(1, 1)).unwrap().build());
        let i = LinearOperator::identity(&a);
        let c = Rf::from_int(7).shift(2);
        assert_eq!(i.scale(&c).proportionality(&i).unwrap(), Some(c));
        let z = i.scale(&Rf::zero());
        assert_eq!(i.proportionality(&z).unwrap(), None);
        assert_eq!(z.proportionality(&z).unwrap(), Some(Rf::one()));
    }
}
