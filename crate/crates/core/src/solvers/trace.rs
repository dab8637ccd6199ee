use serde::{Deserialize, Serialize};

/// One logged iteration.
///
/// When `overflow` is set the potential was evaluated in the shifted domain
/// and `phi` and `grad_norm` hold natural logarithms of the true values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord<T> {
    pub t: usize,
    pub phi: T,
    pub grad_norm: T,
    pub max_residual: T,
    pub wall_nanos: u64,
    pub overflow: bool,
    /// The maintained residuals were rebuilt from the iterate at this step.
    pub recompute: bool,
    /// A negative Gram quadratic form was clamped to zero at this step.
    pub clamped: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace<T> {
    records: Vec<TraceRecord<T>>,
}

impl<T: Copy> ConvergenceTrace<T> {
    pub fn new() -> Self {
        Self { records: Vec::new() }
    }

    /// Appends `record`, or merges flags into the last record when it has
    /// the same `t`. Records with a smaller `t` are a logic error.
    pub fn push(&mut self, record: TraceRecord<T>) {
        if let Some(last) = self.records.last_mut() {
            assert!(record.t >= last.t, "trace records must be increasing in t");
            if last.t == record.t {
                let recompute = last.recompute || record.recompute;
                *last = TraceRecord { recompute, ..record };
                return;
            }
        }
        self.records.push(record);
    }

    pub fn records(&self) -> &[TraceRecord<T>] {
        &self.records
    }

    pub fn last(&self) -> Option<&TraceRecord<T>> {
        self.records.last()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn recompute_count(&self) -> usize {
        self.records.iter().filter(|r| r.recompute).count()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TraceRecord<T>> {
        self.records.iter()
    }
}

impl<'a, T> IntoIterator for &'a ConvergenceTrace<T> {
    type Item = &'a TraceRecord<T>;
    type IntoIter = std::slice::Iter<'a, TraceRecord<T>>;

    fn into_iter(self) -> Self::IntoIter {
        self.records.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(t: usize, recompute: bool) -> TraceRecord<f64> {
        TraceRecord {
            t,
            phi: 1.0,
            grad_norm: 0.0,
            max_residual: 0.0,
            wall_nanos: 0,
            overflow: false,
            recompute,
            clamped: false,
        }
    }

    #[test]
    fn same_t_merges() {
        let mut tr = ConvergenceTrace::new();
        tr.push(rec(1, false));
        tr.push(rec(2, true));
        tr.push(rec(2, false));
        assert_eq!(tr.len(), 2);
        assert!(tr.last().unwrap().recompute);
    }

    #[test]
    #[should_panic]
    fn decreasing_t_panics() {
        let mut tr = ConvergenceTrace::new();
        tr.push(rec(3, false));
        tr.push(rec(2, false));
    }
}
