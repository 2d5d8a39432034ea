//! File formats: POM JSON, decision-matrix, timing, prediction and corpus CSVs.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::cpc::PairwiseOppositeMatrix;
use crate::decision::DecisionMatrix;
use crate::error::{Error, Result};
use crate::metrics::TimingSet;
use crate::pipeline::PredictionRow;
use crate::textpipe::RawDocument;

/// Parses and validates a POM; violations are reported cell by cell.
pub fn parse_pom(json: &str) -> Result<PairwiseOppositeMatrix> {
    let pom: PairwiseOppositeMatrix = serde_json::from_str(json)?;
    pom.ensure_valid()?;
    Ok(pom)
}

pub fn read_pom(path: impl AsRef<Path>) -> Result<PairwiseOppositeMatrix> {
    parse_pom(&std::fs::read_to_string(path)?)
}

/// `model,<criterion>,...`; any criterion columns are accepted.
pub fn parse_decision_matrix<R: Read>(reader: R) -> Result<DecisionMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.get(0) != Some("model") {
        return Err(Error::input(
            "decision matrix CSV must start with a `model` column",
        ));
    }
    let criteria: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let mut models = Vec::new();
    let mut scores = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row?;
        models.push(row[0].to_string());
        let values = row
            .iter()
            .skip(1)
            .zip(&criteria)
            .map(|(cell, c)| parse_number(cell, line + 2, c))
            .collect::<Result<Vec<_>>>()?;
        scores.push(values);
    }
    DecisionMatrix::new(models, criteria, scores)
}

pub fn read_decision_matrix(path: impl AsRef<Path>) -> Result<DecisionMatrix> {
    parse_decision_matrix(File::open(path)?)
}

pub fn write_decision_matrix<W: Write>(writer: W, matrix: &DecisionMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(std::iter::once("model").chain(matrix.criteria().iter().map(String::as_str)))?;
    for (model, row) in matrix.models().iter().zip(matrix.scores()) {
        let mut record = vec![model.clone()];
        record.extend(row.iter().map(f64::to_string));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// `model,seconds`.
pub fn parse_timings<R: Read>(reader: R) -> Result<TimingSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    expect_headers(&mut rdr, &["model", "seconds"])?;
    let mut entries = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row?;
        entries.push((
            row[0].to_string(),
            parse_number(&row[1], line + 2, "seconds")?,
        ));
    }
    TimingSet::new(entries)
}

pub fn read_timings(path: impl AsRef<Path>) -> Result<TimingSet> {
    parse_timings(File::open(path)?)
}

pub fn write_timings<W: Write>(writer: W, timings: &TimingSet) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["model", "seconds"])?;
    for (model, secs) in timings.iter() {
        w.write_record([model, &secs.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `true_label,predicted_label`.
pub fn parse_predictions<R: Read>(reader: R) -> Result<Vec<PredictionRow>> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(reader);
    expect_headers(&mut rdr, &["true_label", "predicted_label"])?;
    let mut rows = Vec::new();
    for row in rdr.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

pub fn read_predictions(path: impl AsRef<Path>) -> Result<Vec<PredictionRow>> {
    parse_predictions(File::open(path)?)
}

pub fn write_predictions<W: Write>(writer: W, rows: &[PredictionRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(["true_label", "predicted_label"])?;
    }
    w.flush()?;
    Ok(())
}

/// `text,label`; an empty label cell is read as unlabelled.
pub fn parse_corpus<R: Read>(reader: R) -> Result<Vec<RawDocument>> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(reader);
    expect_headers(&mut rdr, &["text", "label"])?;
    let mut docs = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let label = row.get(1).filter(|l| !l.is_empty()).map(str::to_string);
        docs.push(RawDocument::new(&row[0], label));
    }
    Ok(docs)
}

pub fn read_corpus(path: impl AsRef<Path>) -> Result<Vec<RawDocument>> {
    parse_corpus(File::open(path)?)
}

fn expect_headers<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let headers = rdr.headers()?;
    if headers.iter().ne(expected.iter().copied()) {
        return Err(Error::input(format!(
            "expected CSV header `{}`, found `{}`",
            expected.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

fn parse_number(cell: &str, line: usize, column: &str) -> Result<f64> {
    cell.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| {
            Error::input(format!(
                "line {line}, column `{column}`: `{cell}` is not a number"
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decision_matrix_round_trip() {
        let csv = "model,accuracy,mcc\nA,0.5,0.25\nB,1,0\n";
        let m = parse_decision_matrix(csv.as_bytes()).unwrap();
        assert_eq!(m.models(), ["A", "B"]);
        assert_eq!(m.get("A", "mcc"), Some(0.25));
        let mut out = Vec::new();
        write_decision_matrix(&mut out, &m).unwrap();
        assert_eq!(parse_decision_matrix(out.as_slice()).unwrap(), m);
    }

    #[test]
    fn bad_cells_name_their_location() {
        let err = parse_decision_matrix("model,f1\nA,abc\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 2, column `f1`"), "{err}");
        assert!(parse_decision_matrix("name,f1\nA,1\n".as_bytes()).is_err());
    }

    #[test]
    fn timings_round_trip() {
        let t = parse_timings("model,seconds\nA,1.5\nB,0.25\n".as_bytes()).unwrap();
        let mut out = Vec::new();
        write_timings(&mut out, &t).unwrap();
        assert_eq!(parse_timings(out.as_slice()).unwrap(), t);
        assert!(parse_timings("model,seconds\nA,0\n".as_bytes()).is_err());
        assert!(parse_timings("model,time\nA,1\n".as_bytes()).is_err());
    }

    #[test]
    fn predictions_and_corpus() {
        let rows = parse_predictions("true_label,predicted_label\na,b\n".as_bytes()).unwrap();
        assert_eq!(rows[0].predicted_label, "b");
        let mut out = Vec::new();
        write_predictions(&mut out, &rows).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "true_label,predicted_label\na,b\n"
        );

        let docs = parse_corpus("text,label\n\"hi, there\",pos\nbye,\n".as_bytes()).unwrap();
        assert_eq!(docs[0].text, "hi, there");
        assert_eq!(docs[1].label, None);
    }

    #[test]
    fn pom_loader_reports_cells() {
        let err = parse_pom(r#"{"criteria":["a","b"],"entries":[[0,3],[2,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("(1, 2)"), "{err}");
        assert!(parse_pom(r#"{"criteria":["a","b"],"entries":[[0,3],[-3,0]]}"#).is_ok());
    }
}
