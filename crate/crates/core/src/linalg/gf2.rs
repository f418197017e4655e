//! Bit-packed Gaussian elimination over GF(2).
//!
//! Rows are packed 64 columns per word and eliminated with word-wide XOR.
//! The pivot rule is the same as the generic path (columns left to right,
//! first nonzero row), so the output is bit-identical to it.

use super::{FieldMatrix, Reduction};

pub(crate) struct PackedRows {
    pub rows: Vec<Vec<u64>>,
}

pub(crate) fn pack(m: &FieldMatrix) -> PackedRows {
    let cols = m.cols();
    let words = cols.div_ceil(64);
    let rows = (0..m.rows())
        .map(|i| {
            let mut row = vec![0u64; words];
            for (j, &v) in m.row(i).iter().enumerate() {
                if v & 1 == 1 {
                    row[j / 64] |= 1u64 << (j % 64);
                }
            }
            row
        })
        .collect();
    PackedRows { rows }
}

fn unpack(packed: &PackedRows, field: super::Field, nrows: usize, cols: usize) -> FieldMatrix {
    FieldMatrix::from_fn(field, nrows, cols, |i, j| {
        ((packed.rows[i][j / 64] >> (j % 64)) & 1) as u32
    })
}

#[inline]
fn get_bit(row: &[u64], j: usize) -> bool {
    (row[j / 64] >> (j % 64)) & 1 == 1
}

pub(crate) fn rref_rank_packed(m: &FieldMatrix) -> Reduction {
    debug_assert_eq!(m.field().p(), 2);
    let (nrows, cols) = (m.rows(), m.cols());
    let mut packed = pack(m);
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let mut pivot_row = None;
        for r in rank..nrows {
            if get_bit(&packed.rows[r], col) {
                pivot_row = Some(r);
                break;
            }
        }
        let Some(pr) = pivot_row else { continue };
        packed.rows.swap(pr, rank);
        let pivot = std::mem::take(&mut packed.rows[rank]);
        for (r, row) in packed.rows.iter_mut().enumerate() {
            if r != rank && get_bit(row, col) {
                for (t, &s) in row.iter_mut().zip(&pivot) {
                    *t ^= s;
                }
            }
        }
        packed.rows[rank] = pivot;
        pivots.push(col);
        rank += 1;
    }
    Reduction {
        rref: unpack(&packed, m.field(), nrows, cols),
        rank,
        pivots,
    }
}
