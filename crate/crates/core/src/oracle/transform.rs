use itertools::Itertools;
use serde::Serialize;

use crate::model::{Rational, Worker, WorkerId};

use super::{OracleError, Pool, MAX_TRANSFORM_POOL};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformResult {
    /// Qualifying orderings, best worker first.
    pub orderings: Vec<Vec<WorkerId>>,
    pub examined: usize,
}

/// Every strict ordering of the pool under which hiring by priority is
/// minority fair and respects minority rights, judged by the original
/// scores, for every number of hires from every listed subpool. An empty
/// subpool list means the whole pool.
///
/// Orderings are enumerated as permutations of the id-sorted pool, in
/// lexicographic order.
pub fn transform_search(
    workers: &[Worker],
    m: Rational,
    subpools: &[Vec<WorkerId>],
) -> Result<TransformResult, OracleError> {
    let pool = Pool::new(workers, m, MAX_TRANSFORM_POOL)?;
    let mut masks = Vec::new();
    for sub in subpools {
        let mut mask = 0u32;
        for id in sub {
            mask |= pool.bit(id).ok_or_else(|| OracleError::UnknownWorker(id.clone()))?;
        }
        masks.push(mask);
    }
    if masks.is_empty() {
        masks.push(pool.full());
    }

    let mut orderings = Vec::new();
    let mut examined = 0;
    for order in (0..pool.len()).permutations(pool.len()) {
        examined += 1;
        let ok = masks.iter().all(|&within| {
            let mut hired = 0u32;
            order
                .iter()
                .filter(|&&i| within >> i & 1 == 1)
                .all(|&i| {
                    hired |= 1 << i;
                    pool.qualifies(hired, within)
                })
        });
        if ok {
            orderings.push(order.iter().map(|&i| pool.ids[i].clone()).collect());
        }
    }
    Ok(TransformResult { orderings, examined })
}
