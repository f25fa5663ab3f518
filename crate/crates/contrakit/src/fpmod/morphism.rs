//! Morphisms of finitely presented abelian groups, with kernels, cokernels,
//! images, and exactness checking.

use super::matrix::IntMatrix;
use super::module::FPModule;
use super::smith::{in_row_lattice, row_kernel_basis};
use super::FpError;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// A morphism f: source → target given on generators: the image of source
/// generator i is the combination Σ_j matrix[i][j] · (target generator j),
/// so elements-as-row-vectors map by v ↦ v·matrix. Well-definedness (the
/// matrix carries source relations into target relations) is checked at
/// construction.
#[derive(Clone)]
pub struct Morphism {
    source: Arc<FPModule>,
    target: Arc<FPModule>,
    matrix: IntMatrix,
}

impl Morphism {
    pub fn new(
        source: Arc<FPModule>,
        target: Arc<FPModule>,
        matrix: IntMatrix,
    ) -> Result<Self, FpError> {
        if matrix.rows() != source.generators() || matrix.cols() != target.generators() {
            return Err(FpError::Shape {
                expected: (source.generators(), target.generators()),
                got: (matrix.rows(), matrix.cols()),
            });
        }
        let tgt_snf = &target.canon().snf;
        for rel in source.presentation().iter_rows() {
            let image = matrix.apply_row(rel);
            if !in_row_lattice(tgt_snf, &image) {
                return Err(FpError::IllDefinedMorphism {
                    relation: rel.iter().map(BigInt::to_string).collect::<Vec<_>>().join(","),
                });
            }
        }
        Ok(Self { source, target, matrix })
    }

    pub fn source(&self) -> &Arc<FPModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FPModule> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn identity(m: &Arc<FPModule>) -> Self {
        Self {
            source: Arc::clone(m),
            target: Arc::clone(m),
            matrix: IntMatrix::identity(m.generators()),
        }
    }

    /// Multiplication by the integer s.
    pub fn scalar(m: &Arc<FPModule>, s: i64) -> Self {
        let n = m.generators();
        Self {
            source: Arc::clone(m),
            target: Arc::clone(m),
            matrix: IntMatrix::identity(n).scale(&BigInt::from(s)),
        }
    }

    pub fn zero(source: &Arc<FPModule>, target: &Arc<FPModule>) -> Self {
        Self {
            source: Arc::clone(source),
            target: Arc::clone(target),
            matrix: IntMatrix::zero(source.generators(), target.generators()),
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply_row(v)
    }

    /// self then other.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism, FpError> {
        if self.target.generators() != other.source.generators()
            || !self.target.isomorphic(&other.source)
        {
            return Err(FpError::ComposeMismatch);
        }
        Ok(Morphism {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    /// Is this the zero map (every generator lands in the target relations)?
    pub fn is_zero_map(&self) -> bool {
        let snf = &self.target.canon().snf;
        self.matrix.iter_rows().all(|row| in_row_lattice(snf, row))
    }

    pub fn equal_as_maps(&self, other: &Morphism) -> bool {
        if self.matrix.rows() != other.matrix.rows()
            || self.matrix.cols() != other.matrix.cols()
        {
            return false;
        }
        let diff = self.matrix.add(&other.matrix.neg());
        let snf = &self.target.canon().snf;
        let all_zero = diff.iter_rows().all(|row| in_row_lattice(snf, row));
        all_zero
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero_module()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero_module()
    }

    /// Kernel with its inclusion. Generators of the kernel are lifted from a
    /// basis of {(x, y) : x·F = −y·B} projected to x, so the inclusion
    /// composes with f to the zero map by construction.
    pub fn kernel(&self) -> (FPModule, Morphism) {
        let f = &self.matrix;
        let b = self.target.presentation();
        let stacked = f.stack(b);
        let basis = row_kernel_basis(&stacked);
        let gens = basis.take_cols(self.source.generators());
        submodule_from_rows(&gens, &self.source)
    }

    /// Cokernel with its projection (identity on target generators).
    pub fn cokernel(&self) -> (FPModule, Morphism) {
        let rels = self.matrix.stack(self.target.presentation());
        let coker = Arc::new(FPModule::from_presentation(rels));
        let proj = Morphism {
            source: Arc::clone(&self.target),
            target: Arc::clone(&coker),
            matrix: IntMatrix::identity(self.target.generators()),
        };
        (Arc::try_unwrap(coker).unwrap_or_else(|a| (*a).clone()), proj)
    }

    /// Image as a submodule of the target, with inclusion.
    pub fn image(&self) -> (FPModule, Morphism) {
        submodule_from_rows(&self.matrix, &self.target)
    }
}

/// The submodule of `ambient` generated by the rows of `gens`, presented on
/// those rows as generators, with its inclusion morphism.
pub fn submodule_from_rows(gens: &IntMatrix, ambient: &Arc<FPModule>) -> (FPModule, Morphism) {
    debug_assert_eq!(gens.cols(), ambient.generators());
    // Relations λ with λ·gens ∈ ⟨ambient relations⟩, i.e. the projection of
    // the left kernel of [gens; ambient.presentation].
    let stacked = gens.stack(ambient.presentation());
    let rel_basis = row_kernel_basis(&stacked).take_cols(gens.rows());
    let sub = Arc::new(FPModule::from_presentation(rel_basis));
    let incl = Morphism {
        source: Arc::clone(&sub),
        target: Arc::clone(ambient),
        matrix: gens.clone(),
    };
    (Arc::try_unwrap(sub).unwrap_or_else(|a| (*a).clone()), incl)
}

/// Do two row families generate the same subgroup of the ambient module
/// (modulo its relations)?
pub fn same_submodule(a: &IntMatrix, b: &IntMatrix, ambient: &FPModule) -> bool {
    let with_rels = |m: &IntMatrix| {
        super::smith::smith(&m.stack(ambient.presentation()))
    };
    let sa = with_rels(a);
    let sb = with_rels(b);
    a.iter_rows().all(|r| in_row_lattice(&sb, r)) && b.iter_rows().all(|r| in_row_lattice(&sa, r))
}

/// Exactness of M --f--> N --g--> K at N: im(f) = ker(g) as submodules of N.
pub fn exact_at(f: &Morphism, g: &Morphism) -> bool {
    let comp = match f.compose(g) {
        Ok(c) => c,
        Err(_) => return false,
    };
    if !comp.is_zero_map() {
        return false;
    }
    let (_, ker_incl) = g.kernel();
    same_submodule(f.matrix(), ker_incl.matrix(), f.target())
}

/// Verify 0 → A → B → C → 0 is short exact.
pub fn verify_short_exact(f: &Morphism, g: &Morphism) -> bool {
    f.is_injective() && g.is_surjective() && exact_at(f, g)
}

impl Morphism {
    /// JSON form {"source": …, "target": …, "matrix": [[int]]}; the matrix
    /// is validated against the endpoint relations on the way in.
    pub fn from_json(v: &serde_json::Value) -> Result<Morphism, FpError> {
        let source = FPModule::from_json(
            v.get("source").ok_or_else(|| FpError::Schema("morphism.source missing".into()))?,
        )?;
        let target = FPModule::from_json(
            v.get("target").ok_or_else(|| FpError::Schema("morphism.target missing".into()))?,
        )?;
        let rows: Vec<Vec<i64>> = serde_json::from_value(
            v.get("matrix")
                .ok_or_else(|| FpError::Schema("morphism.matrix missing".into()))?
                .clone(),
        )
        .map_err(|e| FpError::Schema(format!("morphism.matrix: {e}")))?;
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(FpError::Schema("ragged morphism matrix".into()));
        }
        let flat: Vec<i64> = rows.into_iter().flatten().collect();
        Morphism::new(
            Arc::new(source),
            Arc::new(target),
            IntMatrix::from_i64(r, c, &flat),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .matrix
            .iter_rows()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let rows_i64: Option<Vec<Vec<i64>>> = self.matrix.to_i64_rows();
        match rows_i64 {
            Some(m) => serde_json::json!({
                "source": self.source.to_json(),
                "target": self.target.to_json(),
                "matrix": m,
            }),
            None => serde_json::json!({
                "source": self.source.to_json(),
                "target": self.target.to_json(),
                "matrix_decimal": rows,
            }),
        }
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism({:?} -> {:?} via {:?})",
            self.source, self.target, self.matrix
        )
    }
}

/// Block matrix for a morphism between direct sums: entry (i, j) is the
/// scalar coefficient from summand i of the source to summand j of the
/// target, expanded over the per-summand generator blocks.
pub fn block_scalar_matrix(
    src_parts: &[&FPModule],
    tgt_parts: &[&FPModule],
    coeff: impl Fn(usize, usize) -> BigInt,
) -> IntMatrix {
    let src_gens: Vec<usize> = src_parts.iter().map(|m| m.generators()).collect();
    let tgt_gens: Vec<usize> = tgt_parts.iter().map(|m| m.generators()).collect();
    let total_src: usize = src_gens.iter().sum();
    let total_tgt: usize = tgt_gens.iter().sum();
    let mut m = IntMatrix::zero(total_src, total_tgt);
    let mut ro = 0;
    for (i, &sg) in src_gens.iter().enumerate() {
        let mut co = 0;
        for (j, &tg) in tgt_gens.iter().enumerate() {
            let c = coeff(i, j);
            if !c.is_zero() {
                assert_eq!(sg, tg, "scalar block between non-matching summands");
                for g in 0..sg {
                    m[(ro + g, co + g)] = c.clone();
                }
            }
            co += tg;
        }
        ro += sg;
    }
    m
}

pub fn one() -> BigInt {
    BigInt::one()
}
