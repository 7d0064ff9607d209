//! Report envelope and the json / csv / text renderers.

use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "curveprog";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows for csv output: a header and one record per row.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: Value,
    pub result: Value,
    #[serde(skip)]
    pub table: Table,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: Value, result: &impl Serialize) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            input,
            result: serde_json::to_value(result).expect("results serialize"),
            table: Table::default(),
            text: Vec::new(),
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = table;
        self
    }

    pub fn with_text(mut self, lines: Vec<String>) -> Self {
        self.text = lines;
        self
    }

    fn input_line(&self) -> String {
        serde_json::to_string(&self.input).expect("input serializes")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => {
                let mut out = format!("# {} {} {}\n# input: {}\n", self.tool, self.version, self.command, self.input_line());
                let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
                w.write_record(&self.table.header).expect("in-memory write");
                for row in &self.table.rows {
                    w.write_record(row).expect("in-memory write");
                }
                out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
                out
            }
            Format::Text => {
                let mut out = format!("{} {} {}\ninput: {}\n", self.tool, self.version, self.command, self.input_line());
                for line in &self.text {
                    out.push_str(line);
                    out.push('\n');
                }
                out
            }
        }
    }
}
