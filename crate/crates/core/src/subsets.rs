use crate::{Error, Result};

/// Hard ceiling on the number of vertices whose subsets we are willing to walk.
pub(crate) const MAX_SUBSET_VERTICES: usize = 26;

/// Every nonempty subset of `0..n` as a bitmask, in increasing mask order.
pub(crate) fn nonempty_masks(n: usize) -> Result<impl Iterator<Item = u64>> {
    if n > MAX_SUBSET_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: MAX_SUBSET_VERTICES,
        });
    }
    Ok(1..(1u64 << n))
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}
