use super::SelectedIndices;
use crate::error::{Error, Result};

/// Every `ceil(len / n_out)`-th index, starting at 0. Only touches the
/// output, so the cost does not depend on `len`.
pub fn every_nth(len: usize, n_out: usize) -> Result<SelectedIndices> {
    if n_out == 0 {
        return Err(Error::InvalidNOut);
    }
    if len <= n_out {
        return Ok(SelectedIndices::identity(len));
    }
    let stride = len.div_ceil(n_out);
    Ok((0..len as u64).step_by(stride).collect::<Vec<_>>().into())
}
