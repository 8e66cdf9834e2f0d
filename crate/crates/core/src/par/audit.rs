use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};

/// Per-cell write counters for checking that a phase writes every memory
/// cell at most once.
#[derive(Debug)]
pub struct WriteAudit {
    cells: Vec<AtomicU32>,
    phases_checked: usize,
}

impl WriteAudit {
    pub fn new(cells: usize) -> Self {
        WriteAudit {
            cells: (0..cells).map(|_| AtomicU32::new(0)).collect(),
            phases_checked: 0,
        }
    }

    #[inline]
    pub fn record(&self, cell: usize) {
        self.cells[cell].fetch_add(1, Ordering::Relaxed);
    }

    /// Fails on the first cell written more than once since the last check,
    /// then clears all counters.
    pub fn check(&mut self, phase: &'static str) -> Result<()> {
        self.phases_checked += 1;
        let mut conflict = None;
        for (cell, c) in self.cells.iter_mut().enumerate() {
            let writes = std::mem::take(c.get_mut());
            if writes > 1 && conflict.is_none() {
                conflict = Some(Error::WriteConflict {
                    phase,
                    cell,
                    writes,
                });
            }
        }
        conflict.map_or(Ok(()), Err)
    }

    pub fn phases_checked(&self) -> usize {
        self.phases_checked
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_double_write() {
        let mut a = WriteAudit::new(4);
        a.record(0);
        a.record(3);
        assert!(a.check("ok").is_ok());
        a.record(2);
        a.record(2);
        assert!(matches!(
            a.check("bad"),
            Err(Error::WriteConflict {
                phase: "bad",
                cell: 2,
                writes: 2
            })
        ));
        // counters were cleared
        assert!(a.check("after").is_ok());
        assert_eq!(a.phases_checked(), 3);
    }
}
