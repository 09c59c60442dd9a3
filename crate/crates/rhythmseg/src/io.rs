//! Corpus handling and file formats: onset/interval/cycle CSV loaders,
//! labels CSV, network and measures JSON, and parameter manifests.
//!
//! Formats:
//! - interval CSV: header `sequence_id,interval_s`
//! - onset CSV: header `onset_s[,instrument][,song]`, column names
//!   configurable
//! - cycle CSV: header `song,cycle_onset_s`
//! - labels CSV: header `sequence_id,start_index,label`
//! - network JSON: `{nodes:[{id,size,r,duration,label}],edges:[{from,to,count}],prune_threshold}`
//! - measures JSON: `{npvi, mean_anisochrony:{n:value}, quantality:{quantum,theta,score}}`

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::cluster::ClusterLabeling;
use crate::error::{Error, Result};
use crate::measures;
use crate::network::TransitionNetwork;
use crate::quantal;
use crate::segment::{extract_segments, Segment};
use crate::sequence::{IntervalSequence, SequenceMeta};

/// A list of interval sequences with unique ids, plus per-song quanta.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    sequences: Vec<IntervalSequence>,
    quanta: BTreeMap<String, f64>,
}

impl Corpus {
    pub fn new(sequences: Vec<IntervalSequence>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for s in &sequences {
            if !seen.insert(s.meta().id.clone()) {
                return Err(Error::invalid(format!(
                    "duplicate sequence id '{}'",
                    s.meta().id
                )));
            }
        }
        Ok(Corpus {
            sequences,
            quanta: BTreeMap::new(),
        })
    }

    pub fn from_sequence(seq: IntervalSequence) -> Self {
        Corpus {
            sequences: vec![seq],
            quanta: BTreeMap::new(),
        }
    }

    pub fn sequences(&self) -> &[IntervalSequence] {
        &self.sequences
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Register the quantum for a song.
    pub fn set_quantum(&mut self, song: impl Into<String>, quantum: f64) -> Result<()> {
        if !quantum.is_finite() || quantum <= 0.0 {
            return Err(Error::invalid(format!(
                "quantum must be finite and > 0, got {quantum}"
            )));
        }
        self.quanta.insert(song.into(), quantum);
        Ok(())
    }

    pub fn quanta(&self) -> &BTreeMap<String, f64> {
        &self.quanta
    }

    /// Quantum for one sequence: keyed by its song label, falling back to
    /// its id.
    pub fn quantum_for(&self, seq: &IntervalSequence) -> Option<f64> {
        if let Some(song) = &seq.meta().song {
            if let Some(&q) = self.quanta.get(song) {
                return Some(q);
            }
        }
        self.quanta.get(&seq.meta().id).copied()
    }

    /// One quantum for a pooled analysis: the only registered value, or
    /// the median across songs.
    pub fn pooled_quantum(&self) -> Option<f64> {
        if self.quanta.is_empty() {
            return None;
        }
        let mut values: Vec<f64> = self.quanta.values().copied().collect();
        values.sort_by(f64::total_cmp);
        Some(values[values.len() / 2])
    }

    /// Length-`n` segments of every sequence, concatenated in corpus
    /// order. Segments never cross sequence boundaries.
    pub fn segments(&self, n: usize) -> Result<Vec<Segment>> {
        let mut out = Vec::new();
        for seq in &self.sequences {
            out.extend(extract_segments(seq, n)?);
        }
        Ok(out)
    }

    /// All intervals pooled, preserving corpus order.
    pub fn pooled_intervals(&self) -> Vec<f64> {
        self.sequences
            .iter()
            .flat_map(|s| s.intervals().iter().copied())
            .collect()
    }
}

/// Counts reported by the loaders.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub rows: usize,
    /// Onset rows whose difference to the previous onset was zero or
    /// negative (e.g. duplicate annotations); dropped, not fatal.
    pub dropped_nonpositive: usize,
    /// Rows that failed to parse, tolerated up to the configured fraction.
    pub skipped_rows: usize,
}

/// Column configuration for onset CSV files.
#[derive(Debug, Clone)]
pub struct OnsetColumns {
    pub onset: String,
    pub song: Option<String>,
    pub instrument: Option<String>,
    /// Unparsable-row budget as a fraction of all rows; beyond it the load
    /// fails naming the first bad row.
    pub max_bad_fraction: f64,
}

impl Default for OnsetColumns {
    fn default() -> Self {
        OnsetColumns {
            onset: "onset_s".to_string(),
            song: Some("song".to_string()),
            instrument: Some("instrument".to_string()),
            max_bad_fraction: 0.0,
        }
    }
}

fn load_error(path: &Path, row: usize, message: impl Into<String>) -> Error {
    Error::Load {
        path: path.display().to_string(),
        row,
        message: message.into(),
    }
}

/// Load onset annotations: group by (song, instrument), sort onsets, and
/// difference them into intervals. Non-positive differences are dropped
/// and counted in the stats.
pub fn load_onsets(path: impl AsRef<Path>, columns: &OnsetColumns) -> Result<(Corpus, LoadStats)> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let onset_idx = find(&columns.onset).ok_or_else(|| {
        load_error(
            path,
            1,
            format!("missing required column '{}'", columns.onset),
        )
    })?;
    let song_idx = columns.song.as_deref().and_then(find);
    let instrument_idx = columns.instrument.as_deref().and_then(find);

    let mut stats = LoadStats::default();
    let mut first_bad: Option<(usize, String)> = None;
    let mut order: Vec<(Option<String>, Option<String>)> = Vec::new();
    let mut groups: BTreeMap<(Option<String>, Option<String>), Vec<f64>> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2; // header is row 1
        let record = record?;
        stats.rows += 1;
        let onset: f64 = match record.get(onset_idx).unwrap_or("").parse() {
            Ok(v) => v,
            Err(_) => {
                stats.skipped_rows += 1;
                if first_bad.is_none() {
                    first_bad = Some((
                        row,
                        format!("unparsable onset '{}'", record.get(onset_idx).unwrap_or("")),
                    ));
                }
                continue;
            }
        };
        let song = song_idx.and_then(|i| record.get(i)).map(str::to_string);
        let instrument = instrument_idx
            .and_then(|i| record.get(i))
            .map(str::to_string);
        let key = (song, instrument);
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(onset);
    }
    if stats.rows > 0 {
        let bad_fraction = stats.skipped_rows as f64 / stats.rows as f64;
        if bad_fraction > columns.max_bad_fraction {
            let (row, message) = first_bad.expect("bad rows recorded");
            return Err(load_error(path, row, message));
        }
    }

    let mut sequences = Vec::new();
    for key in order {
        let mut onsets = groups.remove(&key).expect("group recorded");
        onsets.sort_by(f64::total_cmp);
        let mut intervals = Vec::with_capacity(onsets.len().saturating_sub(1));
        for pair in onsets.windows(2) {
            let diff = pair[1] - pair[0];
            if diff > 0.0 {
                intervals.push(diff);
            } else {
                stats.dropped_nonpositive += 1;
            }
        }
        let (song, instrument) = key;
        let id = match (&song, &instrument) {
            (Some(s), Some(i)) => format!("{s}/{i}"),
            (Some(s), None) => s.clone(),
            (None, Some(i)) => i.clone(),
            (None, None) => "onsets".to_string(),
        };
        let mut meta = SequenceMeta::new(id);
        meta.song = song;
        meta.instrument = instrument;
        sequences.push(IntervalSequence::new(meta, intervals)?);
    }
    Ok((Corpus::new(sequences)?, stats))
}

/// Load an interval CSV (`sequence_id,interval_s`). Sequences appear in
/// first-appearance order; a non-positive or unparsable interval fails the
/// load with its row number.
pub fn load_intervals(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let id_idx = find("sequence_id")
        .ok_or_else(|| load_error(path, 1, "missing required column 'sequence_id'"))?;
    let iv_idx = find("interval_s")
        .ok_or_else(|| load_error(path, 1, "missing required column 'interval_s'"))?;

    let mut order: Vec<String> = Vec::new();
    let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record?;
        let id = record.get(id_idx).unwrap_or("").to_string();
        let raw = record.get(iv_idx).unwrap_or("");
        let interval: f64 = raw
            .parse()
            .map_err(|_| load_error(path, row, format!("unparsable interval '{raw}'")))?;
        if !interval.is_finite() || interval <= 0.0 {
            return Err(load_error(
                path,
                row,
                format!("non-positive interval {interval}"),
            ));
        }
        if !groups.contains_key(&id) {
            order.push(id.clone());
        }
        groups.entry(id).or_default().push(interval);
    }
    let mut sequences = Vec::new();
    for id in order {
        let intervals = groups.remove(&id).expect("group recorded");
        sequences.push(IntervalSequence::new(SequenceMeta::new(id), intervals)?);
    }
    Corpus::new(sequences)
}

/// Load metrical-cycle annotations (`song,cycle_onset_s`): sorted onset
/// lists per song, ready for quantum derivation.
pub fn load_cycles(path: impl AsRef<Path>) -> Result<BTreeMap<String, Vec<f64>>> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let song_idx =
        find("song").ok_or_else(|| load_error(path, 1, "missing required column 'song'"))?;
    let onset_idx = find("cycle_onset_s")
        .ok_or_else(|| load_error(path, 1, "missing required column 'cycle_onset_s'"))?;
    let mut out: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record?;
        let song = record.get(song_idx).unwrap_or("").to_string();
        let raw = record.get(onset_idx).unwrap_or("");
        let onset: f64 = raw
            .parse()
            .map_err(|_| load_error(path, row, format!("unparsable cycle onset '{raw}'")))?;
        out.entry(song).or_default().push(onset);
    }
    for onsets in out.values_mut() {
        onsets.sort_by(f64::total_cmp);
    }
    Ok(out)
}

/// Write a corpus as interval CSV, the format [`load_intervals`] reads.
pub fn write_intervals_csv(path: impl AsRef<Path>, corpus: &Corpus) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    writer.write_record(["sequence_id", "interval_s"])?;
    for seq in corpus.sequences() {
        for &iv in seq.intervals() {
            writer.write_record([seq.meta().id.as_str(), &iv.to_string()])?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Write per-segment cluster labels (`sequence_id,start_index,label`).
pub fn write_labels_csv(
    path: impl AsRef<Path>,
    segments: &[Segment],
    labeling: &ClusterLabeling,
) -> Result<()> {
    if segments.len() != labeling.labels.len() {
        return Err(Error::invalid(format!(
            "labeling covers {} segments but {} were given",
            labeling.labels.len(),
            segments.len()
        )));
    }
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    writer.write_record(["sequence_id", "start_index", "label"])?;
    for (seg, &label) in segments.iter().zip(&labeling.labels) {
        let origin = seg
            .origin()
            .ok_or_else(|| Error::invalid("segment without origin cannot be exported"))?;
        writer.write_record([
            origin.sequence.as_ref(),
            &origin.start.to_string(),
            &label.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct NodeJson {
    id: i32,
    size: usize,
    r: f64,
    duration: f64,
    label: Option<String>,
}

#[derive(Serialize)]
struct EdgeJson {
    from: i32,
    to: i32,
    count: usize,
}

#[derive(Serialize)]
struct NetworkJson {
    nodes: Vec<NodeJson>,
    edges: Vec<EdgeJson>,
    prune_threshold: usize,
}

/// Render a transition network as JSON with stable key order.
pub fn network_to_json(network: &TransitionNetwork) -> Result<String> {
    let doc = NetworkJson {
        nodes: network
            .nodes
            .iter()
            .map(|n| NodeJson {
                id: n.id,
                size: n.size,
                r: n.medoid.pattern().weights()[0],
                duration: n.medoid.duration(),
                label: n.label.clone(),
            })
            .collect(),
        edges: network
            .edges
            .iter()
            .map(|e| EdgeJson {
                from: e.from,
                to: e.to,
                count: e.count,
            })
            .collect(),
        prune_threshold: network.prune_threshold,
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn write_network_json(path: impl AsRef<Path>, network: &TransitionNetwork) -> Result<()> {
    write_text(path, &network_to_json(network)?)
}

/// Quantality summary in the measures report.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct QuantalitySummary {
    pub quantum: f64,
    pub theta: f64,
    pub score: f64,
}

/// Corpus-level measures: nPVI, mean anisochrony per segment length, and
/// the quantality score when a quantum is known.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct MeasuresReport {
    /// 200 times the mean anisochrony over all length-2 segments, pooled
    /// across sequences; equals the textbook nPVI for a single sequence.
    pub npvi: Option<f64>,
    pub mean_anisochrony: BTreeMap<String, f64>,
    pub quantality: Option<QuantalitySummary>,
}

pub fn compute_measures(
    corpus: &Corpus,
    lengths: &[usize],
    quantum: Option<f64>,
    theta: f64,
) -> Result<MeasuresReport> {
    let pairs = corpus.segments(2)?;
    let npvi = if pairs.is_empty() {
        None
    } else {
        Some(200.0 * measures::mean_anisochrony(&pairs)?)
    };
    let mut mean_anisochrony = BTreeMap::new();
    for &n in lengths {
        let segs = corpus.segments(n)?;
        if !segs.is_empty() {
            mean_anisochrony.insert(n.to_string(), measures::mean_anisochrony(&segs)?);
        }
    }
    let quantality = match quantum {
        Some(q) => {
            let pooled = corpus.pooled_intervals();
            if pooled.is_empty() {
                None
            } else {
                let seq = IntervalSequence::new(SequenceMeta::new("pooled"), pooled)?;
                let annotation = quantal::annotate(&seq, q, theta)?;
                Some(QuantalitySummary {
                    quantum: q,
                    theta,
                    score: annotation.score,
                })
            }
        }
        None => None,
    };
    Ok(MeasuresReport {
        npvi,
        mean_anisochrony,
        quantality,
    })
}

pub fn measures_to_json(report: &MeasuresReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

pub fn write_measures_json(path: impl AsRef<Path>, report: &MeasuresReport) -> Result<()> {
    write_text(path, &measures_to_json(report)?)
}

/// Write any serializable value as pretty JSON (used for manifests).
pub fn write_json(path: impl AsRef<Path>, value: &impl Serialize) -> Result<()> {
    write_text(path, &serde_json::to_string_pretty(value)?)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut writer = BufWriter::new(file);
    writer.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(())
}
