//! Text formats: Newick trees, matrix CSV, gram and mergegram JSON, DOT and SVG.

pub mod dot;
pub mod json;
pub mod matrix;
pub mod newick;
pub mod svg;

use std::fmt;

/// Version tag written into every JSON document.
pub const FORMAT_TAG: &str = "phylolattice/1";

/// A parse error with a 1-based position (line and column, or row and cell).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FormatError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError { line, column, message: message.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for FormatError {}

/// Any input file the tools accept, recognised by its content.
#[derive(Debug, Clone)]
pub enum Document {
    Gram(crate::gram::Gram),
    Mergegram(crate::mergegram::Mergegram),
    LabeledMergegram(crate::mergegram::LabeledMergegram),
    Matrix(crate::network::PhyloNetwork),
    Trees(Vec<newick::NewickTree>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Gram(_) => "gram",
            Document::Mergegram(_) => "mergegram",
            Document::LabeledMergegram(_) => "labeled mergegram",
            Document::Matrix(_) => "matrix",
            Document::Trees(_) => "newick",
        }
    }
}

/// JSON documents are told apart by their keys, Newick by a leading `(` or a
/// trailing `;`, and anything else is read as a matrix CSV.
pub fn read_document(text: &str) -> crate::error::Result<Document> {
    let body = text.trim();
    if body.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(body)
            .map_err(|e| FormatError::new(e.line(), e.column(), e.to_string()))?;
        return if v.get("levels").is_some() {
            json::gram_from_json(text).map(Document::Gram)
        } else if v.get("taxa").is_some() {
            json::labeled_mergegram_from_json(text).map(Document::LabeledMergegram)
        } else if v.get("points").is_some() {
            json::mergegram_from_json(text).map(Document::Mergegram)
        } else {
            Err(FormatError::new(1, 1, "JSON document is neither a gram nor a mergegram").into())
        };
    }
    if body.starts_with('(') || body.ends_with(';') {
        return Ok(Document::Trees(newick::parse_newick(text)?));
    }
    matrix::parse_matrix_csv(text).map(Document::Matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_are_recognised() {
        assert!(matches!(read_document("(a:1,b:1);").unwrap(), Document::Trees(t) if t.len() == 1));
        assert!(matches!(read_document(",a,b\na,0,1\nb,1,0\n").unwrap(), Document::Matrix(_)));
        let m = r#"{"format":"phylolattice/1","points":[{"birth":0,"death":"inf","mult":1}]}"#;
        assert_eq!(read_document(m).unwrap().kind(), "mergegram");
        let e = read_document(r#"{"format":"phylolattice/1"}"#).unwrap_err();
        assert!(e.to_string().contains("neither"));
        assert!(read_document("{ nope").is_err());
    }
}
