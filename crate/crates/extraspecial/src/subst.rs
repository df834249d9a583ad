//! Linear change of variables between polynomial contexts.

use crate::error::{Error, Result};
use crate::fp::{Fp, PrimeField};
use crate::poly::MultiPoly;
use crate::vars::VariableContext;
use std::sync::Arc;

/// A substitution sending each source variable to a linear form in the
/// target variables.  Application is a ring homomorphism.
#[derive(Clone)]
pub struct LinearSubstitution {
    source: Arc<VariableContext>,
    target: Arc<VariableContext>,
    images: Vec<MultiPoly>,
}

impl LinearSubstitution {
    /// Row i of `matrix` gives the coefficients of the image of source
    /// variable i in the target variables.
    pub fn from_matrix(
        source: Arc<VariableContext>,
        target: Arc<VariableContext>,
        field: PrimeField,
        matrix: &[Vec<Fp>],
    ) -> Result<Self> {
        if matrix.len() != source.len() {
            return Err(Error::Dimension(format!(
                "substitution matrix has {} rows for {} source variables",
                matrix.len(),
                source.len()
            )));
        }
        let mut images = Vec::with_capacity(matrix.len());
        for row in matrix {
            if row.len() != target.len() {
                return Err(Error::Dimension(format!(
                    "substitution matrix row has {} entries for {} target variables",
                    row.len(),
                    target.len()
                )));
            }
            images.push(MultiPoly::linear_form(Arc::clone(&target), field, row));
        }
        Ok(LinearSubstitution {
            source,
            target,
            images,
        })
    }

    pub fn identity(ctx: Arc<VariableContext>, field: PrimeField) -> Self {
        let images = (0..ctx.len())
            .map(|i| MultiPoly::var(Arc::clone(&ctx), field, i))
            .collect();
        LinearSubstitution {
            source: Arc::clone(&ctx),
            target: ctx,
            images,
        }
    }

    pub fn source(&self) -> &Arc<VariableContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VariableContext> {
        &self.target
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if !p.ctx().compatible(&self.source) {
            return Err(Error::ContextMismatch {
                left: p.ctx().to_string(),
                right: self.source.to_string(),
            });
        }
        p.map_variables(&self.images, Arc::clone(&self.target))
    }
}
