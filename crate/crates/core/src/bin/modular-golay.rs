use clap::{Args, Parser, Subcommand};
use modular_golay::bits::{format_hex, parse_word, BitString24};
use modular_golay::code::{DecodeResult, DecodeStatus, LinearCode, SyndromeCodec};
use modular_golay::export::{matrix_as, Derivation, Format};
use modular_golay::verify::verify_all;
use modular_golay::BilliardMaps;
use serde::Serialize;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "modular-golay",
    version,
    about = "Derive and verify the binary code built from the modular tessellation, and encode/decode with it"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Output format.
    #[arg(long, value_parser = parse_format, default_value = "text")]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long)]
    json: bool,
}

impl Output {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Write labelings, label tables, subsets and the generator matrix.
    Derive {
        #[command(flatten)]
        out: Output,
        /// Directory to write into.
        #[arg(long, env = "MODULAR_GOLAY_OUT_DIR", default_value = "golay-out")]
        output: PathBuf,
    },
    /// Run every check; exit 1 if any fails.
    Verify {
        #[command(flatten)]
        out: Output,
        /// Use the sigma table as printed (4 -> 12, 5 -> 12) instead of the corrected one.
        #[arg(long, hide = true)]
        printed_sigma: bool,
    },
    /// Print the 12 x 24 generator matrix.
    Matrix {
        #[command(flatten)]
        out: Output,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the weight distribution of the code.
    Weights {
        #[command(flatten)]
        out: Output,
    },
    /// Encode information words, one bit per code dimension (hex, or binary of exactly that width); reads stdin if none given.
    Encode {
        #[command(flatten)]
        out: Output,
        words: Vec<String>,
    },
    /// Decode 24-bit received words (6 hex or 24 binary digits); reads stdin if none given.
    Decode {
        #[command(flatten)]
        out: Output,
        words: Vec<String>,
    },
    /// Code invariants: rank, enumerator, dual distance, information set.
    Report {
        #[command(flatten)]
        out: Output,
        /// Also dump the syndrome table (2^(24 - rank) little-endian u32 entries).
        #[arg(long)]
        syndrome_table: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn io(path: &Path, e: io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(cli.command, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn codec() -> SyndromeCodec {
    let matrix = modular_golay::generating_family();
    SyndromeCodec::new(LinearCode::from_bitstrings(matrix.rows()))
        .expect("derived code has distance 8")
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn inputs(words: Vec<String>) -> Result<Vec<String>, CliError> {
    if !words.is_empty() {
        return Ok(words);
    }
    let mut lines = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line.map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        let line = line.trim();
        if !line.is_empty() {
            lines.push(line.to_string());
        }
    }
    Ok(lines)
}

fn run(command: Command, stdout: &mut impl Write) -> Result<u8, CliError> {
    match command {
        Command::Derive { out, output } => {
            let derivation = Derivation::new(&BilliardMaps::standard())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            fs::create_dir_all(&output).map_err(|e| CliError::io(&output, e))?;
            for (name, contents) in derivation.files(out.format()) {
                let path = output.join(name);
                fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
                emit(stdout, &format!("{}\n", path.display()))?;
            }
            Ok(0)
        }
        Command::Verify { out, printed_sigma } => {
            let maps = if printed_sigma {
                BilliardMaps::with_printed_sigma()
            } else {
                BilliardMaps::standard()
            };
            let report = verify_all(&maps);
            let text = match out.format() {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut s = String::from("name,anchor,passed\n");
                    for c in &report.checks {
                        s += &format!("\"{}\",\"{}\",{}\n", c.name, c.anchor, c.passed);
                    }
                    s
                }
                Format::Text => report.to_string() + "\n",
            };
            emit(stdout, &text)?;
            Ok(if report.passed { 0 } else { EXIT_FAILURE })
        }
        Command::Matrix { out, output } => {
            let text = matrix_as(&modular_golay::generating_family(), out.format());
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| CliError::io(&path, e))?,
                None => emit(stdout, &text)?,
            }
            Ok(0)
        }
        Command::Weights { out } => {
            let e = codec()
                .code()
                .weight_enumerator()
                .expect("rank is within the enumeration limit");
            let text = match out.format() {
                Format::Json => json(
                    &e.nonzero()
                        .into_iter()
                        .map(|(w, c)| WeightCount {
                            weight: w,
                            count: c,
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Csv => {
                    let mut s = String::from("weight,count\n");
                    for (w, c) in e.nonzero() {
                        s += &format!("{w},{c}\n");
                    }
                    s
                }
                Format::Text => e
                    .nonzero()
                    .iter()
                    .map(|(w, c)| format!("{w} {c}\n"))
                    .collect(),
            };
            emit(stdout, &text)?;
            Ok(0)
        }
        Command::Encode { out, words } => {
            let codec = codec();
            let mut records = Vec::new();
            for word in inputs(words)? {
                let bits = codec.info_bits();
                let info = parse_word(&word, bits)
                    .map_err(|e| CliError::Usage(format!("`{word}`: {e}")))?;
                let codeword = codec.encode(info).expect("info fits the rank");
                records.push(Encoded {
                    info: format_hex(info, bits),
                    codeword: codeword.to_hex(),
                });
            }
            let text = match out.format() {
                Format::Json => json(&records),
                Format::Csv => std::iter::once("info,codeword\n".to_string())
                    .chain(
                        records
                            .iter()
                            .map(|r| format!("{},{}\n", r.info, r.codeword)),
                    )
                    .collect(),
                Format::Text => records
                    .iter()
                    .map(|r| format!("{}\n", r.codeword))
                    .collect(),
            };
            emit(stdout, &text)?;
            Ok(0)
        }
        Command::Decode { out, words } => {
            let codec = codec();
            let mut records = Vec::new();
            for word in inputs(words)? {
                let received: BitString24 = word
                    .parse()
                    .map_err(|e| CliError::Usage(format!("`{word}`: {e}")))?;
                records.push(Decoded::new(
                    received,
                    codec.decode(received),
                    codec.info_bits(),
                ));
            }
            let text = match out.format() {
                Format::Json => json(&records),
                Format::Csv => {
                    std::iter::once("received,info,codeword,status,errors\n".to_string())
                        .chain(records.iter().map(|r| {
                            format!(
                                "{},{},{},{},{}\n",
                                r.received,
                                r.info,
                                r.codeword,
                                r.status,
                                join(&r.errors, " ")
                            )
                        }))
                        .collect()
                }
                Format::Text => records
                    .iter()
                    .map(|r| {
                        format!(
                            "{} info={} codeword={} errors={} [{}]\n",
                            r.status,
                            r.info,
                            r.codeword,
                            r.errors.len(),
                            join(&r.errors, ",")
                        )
                    })
                    .collect(),
            };
            emit(stdout, &text)?;
            let uncorrectable = records.iter().any(|r| r.status == "detected-uncorrectable");
            Ok(if uncorrectable { EXIT_FAILURE } else { 0 })
        }
        Command::Report {
            out,
            syndrome_table,
        } => {
            let codec = codec();
            let report = CodeReport::new(&codec);
            if let Some(path) = &syndrome_table {
                let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
                let mut w = io::BufWriter::new(file);
                codec
                    .write_syndrome_table(&mut w)
                    .and_then(|_| w.flush())
                    .map_err(|e| CliError::io(path, e))?;
            }
            let text = match out.format() {
                Format::Json => json(&report),
                _ => report.to_text(),
            };
            emit(stdout, &text)?;
            Ok(0)
        }
    }
}

fn join(xs: &[u8], sep: &str) -> String {
    xs.iter().map(u8::to_string).collect::<Vec<_>>().join(sep)
}

#[derive(Serialize)]
struct WeightCount {
    weight: usize,
    count: u64,
}

#[derive(Serialize)]
struct Encoded {
    info: String,
    codeword: String,
}

#[derive(Serialize)]
struct Decoded {
    received: String,
    info: String,
    codeword: String,
    status: &'static str,
    errors: Vec<u8>,
}

impl Decoded {
    fn new(received: BitString24, r: DecodeResult, info_bits: u32) -> Self {
        Decoded {
            received: received.to_hex(),
            info: format_hex(r.info, info_bits),
            codeword: r.codeword.to_hex(),
            status: match r.status {
                DecodeStatus::Clean => "clean",
                DecodeStatus::Corrected => "corrected",
                DecodeStatus::DetectedUncorrectable => "detected-uncorrectable",
            },
            errors: r.error_positions,
        }
    }
}

#[derive(Serialize)]
struct CodeReport {
    length: usize,
    rank: usize,
    min_distance: usize,
    dual_distance: usize,
    self_dual: bool,
    doubly_even: bool,
    golay: bool,
    enumerator: String,
    information_positions: Vec<usize>,
    correctable_syndromes: usize,
}

impl CodeReport {
    fn new(codec: &SyndromeCodec) -> Self {
        let code = codec.code();
        let e = code
            .weight_enumerator()
            .expect("rank is within the enumeration limit");
        let dual = modular_golay::code::macwilliams_transform(&e).expect("linear code enumerator");
        CodeReport {
            length: code.len(),
            rank: code.rank(),
            min_distance: code.min_distance().expect("nonzero code"),
            dual_distance: (1..=code.len()).find(|&w| dual.get(w) > 0).unwrap_or(0),
            self_dual: code.is_self_dual(),
            doubly_even: code.is_doubly_even(),
            golay: code.identify_golay(),
            enumerator: e.polynomial(),
            information_positions: code.info_positions().iter().map(|p| p + 1).collect(),
            correctable_syndromes: codec.correctable_syndromes(),
        }
    }

    fn to_text(&self) -> String {
        format!(
            "length {}\nrank {}\nminimum distance {}\ndual distance {}\nself-dual {}\ndoubly even {}\nextended Golay {}\nenumerator {}\ninformation positions {}\ncorrectable syndromes {}\n",
            self.length,
            self.rank,
            self.min_distance,
            self.dual_distance,
            self.self_dual,
            self.doubly_even,
            self.golay,
            self.enumerator,
            self.information_positions.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            self.correctable_syndromes,
        )
    }
}
