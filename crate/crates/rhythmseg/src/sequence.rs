use crate::error::{Error, Result};

/// Identifying metadata for one interval sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceMeta {
    /// Unique id of the sequence within a corpus.
    pub id: String,
    pub song: Option<String>,
    pub instrument: Option<String>,
}

impl SequenceMeta {
    pub fn new(id: impl Into<String>) -> Self {
        SequenceMeta {
            id: id.into(),
            song: None,
            instrument: None,
        }
    }

    pub fn with_song(mut self, song: impl Into<String>) -> Self {
        self.song = Some(song.into());
        self
    }

    pub fn with_instrument(mut self, instrument: impl Into<String>) -> Self {
        self.instrument = Some(instrument.into());
        self
    }
}

/// An ordered sequence of inter-onset intervals (seconds) from one source.
///
/// Every interval is strictly positive; order is preserved exactly as
/// ingested. Values are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSequence {
    meta: SequenceMeta,
    intervals: Vec<f64>,
}

impl IntervalSequence {
    pub fn new(meta: SequenceMeta, intervals: Vec<f64>) -> Result<Self> {
        for (i, &v) in intervals.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::invalid(format!(
                    "interval {i} of sequence '{}' is {v}; intervals must be finite and > 0",
                    meta.id
                )));
            }
        }
        Ok(IntervalSequence { meta, intervals })
    }

    pub fn meta(&self) -> &SequenceMeta {
        &self.meta
    }

    pub fn intervals(&self) -> &[f64] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}
