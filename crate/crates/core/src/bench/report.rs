use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::RegimeId;

pub const CSV_HEADER: &str = "suite,config,regime,asserted,total,inferred,ms,timedout,seed,run";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ts1,
    Ts2,
    Ts3,
    Custom,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Ts1 => "ts1",
            Suite::Ts2 => "ts2",
            Suite::Ts3 => "ts3",
            Suite::Custom => "custom",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Suite::Ts1, Suite::Ts2, Suite::Ts3, Suite::Custom]
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Run number, or the row averaging all runs of a (file, regime) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Run {
    Index(usize),
    Average,
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Run::Index(i) => write!(f, "{i}"),
            Run::Average => f.write_str("avg"),
        }
    }
}

impl FromStr for Run {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "avg" {
            return Ok(Run::Average);
        }
        s.parse().map(Run::Index).map_err(|_| format!("bad run {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub suite: Suite,
    pub config: String,
    pub regime: RegimeId,
    /// Quads of the input dataset.
    pub asserted: usize,
    /// Quads of the closed dataset.
    pub total: usize,
    /// Quads added to the inference graphs.
    pub inferred: usize,
    pub ms: f64,
    pub timed_out: bool,
    pub seed: u64,
    pub run: Run,
}

impl BenchRecord {
    /// Mean timing over `runs`; counts come from the first run. A pair is
    /// marked timed out if any run timed out.
    pub fn average(runs: &[BenchRecord]) -> Option<BenchRecord> {
        let first = runs.first()?;
        let ms = runs.iter().map(|r| r.ms).sum::<f64>() / runs.len() as f64;
        Some(BenchRecord {
            ms,
            timed_out: runs.iter().any(|r| r.timed_out),
            run: Run::Average,
            ..first.clone()
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Row {
    suite: Suite,
    config: String,
    regime: RegimeId,
    asserted: usize,
    total: usize,
    inferred: usize,
    ms: f64,
    timedout: bool,
    seed: u64,
    run: String,
}

pub fn write_csv<W: Write>(records: &[BenchRecord], sink: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(sink);
    for r in records {
        w.serialize(Row {
            suite: r.suite,
            config: r.config.clone(),
            regime: r.regime,
            asserted: r.asserted,
            total: r.total,
            inferred: r.inferred,
            ms: r.ms,
            timedout: r.timed_out,
            seed: r.seed,
            run: r.run.to_string(),
        })?;
    }
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(source: R) -> Result<Vec<BenchRecord>, csv::Error> {
    let mut r = csv::Reader::from_reader(source);
    r.deserialize::<Row>()
        .map(|row| {
            let row = row?;
            let run = row
                .run
                .parse()
                .map_err(|e: String| csv::Error::from(std::io::Error::new(std::io::ErrorKind::InvalidData, e)))?;
            Ok(BenchRecord {
                suite: row.suite,
                config: row.config,
                regime: row.regime,
                asserted: row.asserted,
                total: row.total,
                inferred: row.inferred,
                ms: row.ms,
                timed_out: row.timedout,
                seed: row.seed,
                run,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(run: Run, ms: f64) -> BenchRecord {
        BenchRecord {
            suite: Suite::Ts2,
            config: "n20-k2-m10".into(),
            regime: RegimeId::OwlLocal,
            asserted: 10,
            total: 14,
            inferred: 4,
            ms,
            timed_out: false,
            seed: 7,
            run,
        }
    }

    #[test]
    fn header_and_round_trip() {
        let rows = vec![record(Run::Index(0), 1.5), record(Run::Average, 1.5)];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert!(text.contains("ts2,n20-k2-m10,ckr-owl-local,10,14,4,1.5,false,7,avg"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
        let mut empty = Vec::new();
        write_csv(&[], &mut empty).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().trim(), CSV_HEADER);
    }

    #[test]
    fn average_is_the_mean() {
        let rows = [
            record(Run::Index(0), 1.0),
            record(Run::Index(1), 2.0),
            record(Run::Index(2), 6.0),
        ];
        let avg = BenchRecord::average(&rows).unwrap();
        assert_eq!(avg.ms, 3.0);
        assert_eq!(avg.run, Run::Average);
        assert!(BenchRecord::average(&[]).is_none());
    }
}
