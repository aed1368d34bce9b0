//! Polynomial rings `F_p[x_0, ..., x_{n-1}]` with a monomial order and grading.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Fp,
    nvars: usize,
    order: MonomialOrder,
    grading: Option<Vec<u32>>,
    names: Vec<String>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] {:?}", self.field, self.names.join(","), self.order)?;
        if let Some(g) = &self.grading {
            write!(f, " grading {:?}", g)?;
        }
        Ok(())
    }
}

impl Ring {
    /// Standard graded ring with grevlex order and variables `x0..x{n-1}`.
    pub fn new(field: Fp, nvars: usize) -> Result<Arc<Ring>> {
        Ring::with_order(field, nvars, MonomialOrder::Grevlex, None)
    }

    /// Ring with a chosen order and optional positive variable weights.
    pub fn with_order(
        field: Fp,
        nvars: usize,
        order: MonomialOrder,
        grading: Option<Vec<u32>>,
    ) -> Result<Arc<Ring>> {
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        if let MonomialOrder::Weighted(w) = &order {
            if w.len() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, got: w.len() });
            }
        }
        let grading = match grading {
            Some(g) if g.iter().all(|&x| x == 1) => None,
            Some(g) => {
                if g.len() != nvars {
                    return Err(Error::LengthMismatch { expected: nvars, got: g.len() });
                }
                if g.iter().any(|&x| x == 0) {
                    return Err(Error::InvalidArgument("variable weights must be positive".into()));
                }
                Some(g)
            }
            None => None,
        };
        let names = (0..nvars).map(|i| format!("x{i}")).collect();
        Ok(Arc::new(Ring { field, nvars, order, grading, names }))
    }

    /// Same ring with different order or grading.
    pub fn reorder(&self, order: MonomialOrder, grading: Option<Vec<u32>>) -> Result<Arc<Ring>> {
        Ring::with_order(self.field, self.nvars, order, grading)
    }

    #[inline(always)]
    pub fn field(&self) -> &Fp {
        &self.field
    }

    #[inline(always)]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn grading(&self) -> Option<&[u32]> {
        self.grading.as_deref()
    }

    /// Weight of variable `i`.
    pub fn var_weight(&self, i: usize) -> u32 {
        self.grading.as_ref().map_or(1, |g| g[i])
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Degree of a monomial with respect to the grading.
    #[inline(always)]
    pub fn deg(&self, m: &Monomial) -> u32 {
        match &self.grading {
            None => m.degree(),
            Some(g) => m.weighted_degree(g),
        }
    }

    /// Compares monomials in the ring order.
    #[inline(always)]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.nvars, self.grading.as_deref())
    }

    /// Whether the order is degree-compatible, so that leading terms of
    /// homogeneous elements determine the graded structure.
    pub fn is_degree_order(&self) -> bool {
        self.order.is_graded()
    }

    pub fn same(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}
