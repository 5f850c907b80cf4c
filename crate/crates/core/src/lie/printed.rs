use super::Label;
use crate::exact::{DenseMatrix, GaussianRational};

/// Entries are `(re, im)` integer pairs.
fn from_table(rows: [[(i64, i64); 5]; 5]) -> DenseMatrix {
    DenseMatrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&(a, b)| GaussianRational::from_parts((a, 1), (b, 1)))
                    .collect()
            })
            .collect(),
    )
    .expect("5x5 table")
}

const O: (i64, i64) = (0, 0);
const ONE: (i64, i64) = (1, 0);
const M_ONE: (i64, i64) = (-1, 0);
const I: (i64, i64) = (0, 1);
const M_I: (i64, i64) = (0, -1);
const TWO: (i64, i64) = (2, 0);
const M_TWO: (i64, i64) = (-2, 0);
const TWO_I: (i64, i64) = (0, 2);
const M_TWO_I: (i64, i64) = (0, -2);

/// The reference 5×5 matrices for n = 3: `R₁`, `L₁`, `X₁`, `X₂`, `X₃`.
pub fn reference_matrices_n3() -> Vec<(Label, DenseMatrix)> {
    vec![
        (
            Label::R(1),
            from_table([
                [O, O, O, I, ONE],
                [O, O, O, O, O],
                [O, O, O, O, O],
                [M_I, O, O, O, O],
                [M_ONE, O, O, O, O],
            ]),
        ),
        (
            Label::L(1),
            from_table([
                [O, O, O, M_I, ONE],
                [O, O, O, O, O],
                [O, O, O, O, O],
                [I, O, O, O, O],
                [M_ONE, O, O, O, O],
            ]),
        ),
        (
            Label::X(1),
            from_table([
                [O, O, O, O, TWO],
                [O, O, O, O, O],
                [O, O, O, O, O],
                [O, O, O, O, TWO_I],
                [M_TWO, O, O, M_TWO_I, O],
            ]),
        ),
        (
            Label::X(2),
            from_table([
                [O, TWO_I, O, O, O],
                [M_TWO_I, O, O, TWO, O],
                [O, O, O, O, O],
                [O, M_TWO, O, O, O],
                [O, O, O, O, O],
            ]),
        ),
        (
            Label::X(3),
            from_table([
                [O, O, TWO_I, O, O],
                [O, O, O, O, O],
                [M_TWO_I, O, O, TWO, O],
                [O, O, M_TWO, O, O],
                [O, O, O, O, O],
            ]),
        ),
    ]
}
