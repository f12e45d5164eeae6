//! Labelled square matrices as CSV.
//!
//! The first row holds the taxa labels. If its first cell is empty, every body
//! row starts with its own label, which must match the header order.

use super::FormatError;
use crate::error::Result;
use crate::network::PhyloNetwork;
use crate::taxa::TaxaSet;

pub fn parse_matrix_csv(text: &str) -> Result<PhyloNetwork> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for r in rdr.records() {
        let r = r.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            FormatError::new(line, 1, e.to_string())
        })?;
        if r.iter().all(str::is_empty) {
            continue;
        }
        let line = r.position().map_or(0, |p| p.line() as usize);
        records.push((line, r));
    }
    let Some((hline, header)) = records.first() else {
        return Err(FormatError::new(1, 1, "empty matrix").into());
    };
    let row_labels = header.get(0) == Some("");
    let skip = usize::from(row_labels);
    let labels: Vec<&str> = header.iter().skip(skip).collect();
    let taxa = TaxaSet::new(labels.iter().copied())
        .map_err(|e| FormatError::new(*hline, 1, e.to_string()))?;
    let n = taxa.len();
    let body = &records[1..];
    if body.len() != n {
        return Err(FormatError::new(
            body.last().map_or(*hline, |r| r.0),
            1,
            format!("expected {n} rows after the header, found {}", body.len()),
        )
        .into());
    }
    let mut rows = Vec::with_capacity(n);
    for (i, (line, rec)) in body.iter().enumerate() {
        if rec.len() != n + skip {
            return Err(FormatError::new(
                *line,
                rec.len().min(n + skip) + 1,
                format!("expected {} cells, found {}", n + skip, rec.len()),
            )
            .into());
        }
        if row_labels && rec.get(0) != Some(taxa.label(i)) {
            return Err(FormatError::new(
                *line,
                1,
                format!("row label {:?} does not match column {:?}", rec.get(0).unwrap_or(""), taxa.label(i)),
            )
            .into());
        }
        let mut row = Vec::with_capacity(n);
        for (j, cell) in rec.iter().skip(skip).enumerate() {
            let v: f64 = cell.parse().map_err(|_| {
                FormatError::new(*line, j + skip + 1, format!("non-numeric cell {cell:?}"))
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    PhyloNetwork::new(taxa, rows)
}

/// Header of labels, then one numeric row per taxon, in shortest round-trip form.
pub fn write_matrix_csv(net: &PhyloNetwork) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(net.taxa().labels()).expect("in-memory write");
    for row in net.rows() {
        w.write_record(row.iter().map(|v| v.to_string())).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn round_trip() {
        let net = parse_matrix_csv("x,y\n0,1.5\n1.5,0\n").unwrap();
        assert_eq!(net.get(0, 1), 1.5);
        let text = write_matrix_csv(&net);
        assert_eq!(text, "x,y\n0,1.5\n1.5,0\n");
        assert_eq!(parse_matrix_csv(&text).unwrap(), net);
        let third = 1.0 / 3.0;
        let t = TaxaSet::new(["a", "b"]).unwrap();
        let n = PhyloNetwork::from_fn(t, |i, j| if i == j { 0.0 } else { third }).unwrap();
        assert_eq!(parse_matrix_csv(&write_matrix_csv(&n)).unwrap(), n);
    }

    #[test]
    fn row_labels() {
        let net = parse_matrix_csv(",x,y\nx,0,1\ny,1,0\n").unwrap();
        assert_eq!(net.taxa().labels(), ["x", "y"]);
        assert!(parse_matrix_csv(",x,y\ny,0,1\nx,1,0\n").is_err());
    }

    #[test]
    fn diagnostics() {
        match parse_matrix_csv("x,y\n0,1\n2,0\n") {
            Err(Error::InvalidNetwork(v)) => assert!(v[0].to_string().contains("(x, y)")),
            other => panic!("unexpected {other:?}"),
        }
        match parse_matrix_csv("x,y\n0,1\n1,zero\n") {
            Err(Error::Format(e)) => assert_eq!((e.line, e.column), (3, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_matrix_csv("x,y\n0,1\n1\n").is_err());
        assert!(parse_matrix_csv("x,y\n0,1\n").is_err());
        assert!(parse_matrix_csv("").is_err());
    }
}
