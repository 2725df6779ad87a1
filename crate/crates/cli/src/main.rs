use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morphic_core::gen::{palindrome_family, random_word};
use morphic_core::oracle::DEFAULT_MAX_LEN;
use morphic_core::{run, Oracle, TraceDocument, Word};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Morphic primitivity: decide, factorize, trace, cross-check and benchmark.
#[derive(Parser)]
#[command(name = "morphic", version)]
struct Cli {
    /// Treat input words as whitespace-separated tokens instead of characters.
    #[arg(long, global = true)]
    tokens: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print `<word>\tprimitive|imprimitive` for each input line.
    Check {
        /// Input file, one word per line; stdin when omitted or `-`.
        file: Option<PathBuf>,
    },
    /// Print a minimal fixed-point morphism and the induced factorization.
    Factorize {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the round-by-round run as JSON.
    Trace { word: String },
    /// Run the exhaustive reference search.
    Oracle {
        word: String,
        /// Raise the word-length limit.
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Disable the word-length limit entirely.
        #[arg(long)]
        force: bool,
    },
    /// Generate words, one per line.
    Gen(Corpus),
    /// Run the engine over a corpus and report work counters and timings.
    Bench {
        #[command(flatten)]
        corpus: Corpus,
        /// Read words from a file (`-` for stdin).
        #[arg(long, conflicts_with_all = ["family", "random"])]
        file: Option<PathBuf>,
        /// Emit CSV instead of an aligned table.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// a_1 ... a_n a_n ... a_1
    Wn,
}

#[derive(Args)]
struct Corpus {
    #[arg(long, value_enum, conflicts_with = "random")]
    family: Option<Family>,
    /// Family parameter (largest member).
    #[arg(long, requires = "family")]
    n: Option<usize>,
    /// Smallest family parameter; defaults to `--n`.
    #[arg(long, requires = "family")]
    from: Option<usize>,
    #[arg(long)]
    random: bool,
    #[arg(long, requires = "random")]
    len: Option<usize>,
    #[arg(long, requires = "random")]
    alphabet: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random words.
    #[arg(long, default_value_t = 1)]
    count: usize,
}

enum CliError {
    Usage(String),
    Guard(String),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Guard(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Guard(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<(), CliError>;

fn parse_word(s: &str, tokens: bool) -> Word {
    if tokens {
        Word::from_tokens(s)
    } else {
        Word::from_chars(s)
    }
}

fn read_lines(file: Option<&PathBuf>) -> io::Result<Vec<String>> {
    let reader: Box<dyn BufRead> = match file {
        Some(p) if p.as_os_str() != "-" => Box::new(BufReader::new(File::open(p)?)),
        _ => Box::new(io::stdin().lock()),
    };
    reader
        .lines()
        .map(|l| l.map(|s| s.trim_end_matches('\r').to_owned()))
        .collect()
}

fn corpus_words(c: &Corpus) -> Result<Option<Vec<Word>>, CliError> {
    if let Some(Family::Wn) = c.family {
        let n =
            c.n.ok_or_else(|| CliError::Usage("--family wn needs --n".into()))?;
        let from = c.from.unwrap_or(n);
        if from == 0 || from > n {
            return Err(CliError::Usage("need 1 <= --from <= --n".into()));
        }
        return Ok(Some((from..=n).map(palindrome_family).collect()));
    }
    if c.random {
        let (Some(len), Some(alphabet)) = (c.len, c.alphabet) else {
            return Err(CliError::Usage(
                "--random needs --len and --alphabet".into(),
            ));
        };
        if alphabet == 0 && len > 0 {
            return Err(CliError::Usage("--alphabet must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        return Ok(Some(
            (0..c.count)
                .map(|_| random_word(len, alphabet, &mut rng))
                .collect(),
        ));
    }
    Ok(None)
}

fn cmd_check(file: Option<&PathBuf>, tokens: bool, out: &mut impl Write) -> CliResult {
    let lines = read_lines(file)?;
    let verdicts: Vec<bool> = lines
        .par_iter()
        .map(|l| run(&parse_word(l, tokens)).primitive)
        .collect();
    for (line, primitive) in lines.iter().zip(verdicts) {
        let v = if primitive {
            "primitive"
        } else {
            "imprimitive"
        };
        writeln!(out, "{line}\t{v}")?;
    }
    Ok(())
}

fn factor_separator(w: &Word) -> &'static str {
    match w.surface() {
        morphic_core::Surface::Chars => "|",
        morphic_core::Surface::Tokens => " | ",
    }
}

fn verdict(primitive: bool) -> &'static str {
    if primitive {
        "primitive"
    } else {
        "imprimitive"
    }
}

fn cmd_factorize(word: &str, tokens: bool, json: bool, out: &mut impl Write) -> CliResult {
    let w = parse_word(word, tokens);
    let res = run(&w);
    let doc = TraceDocument::new(&w, &res);
    if json {
        serde_json::to_writer_pretty(&mut *out, &doc.outcome).map_err(io::Error::from)?;
        writeln!(out)?;
        return Ok(());
    }
    writeln!(out, "{}", verdict(res.primitive))?;
    writeln!(out, "f: {}", res.morphism.render(&w))?;
    writeln!(
        out,
        "factors: {}",
        doc.outcome.factors.join(factor_separator(&w))
    )?;
    Ok(())
}

fn cmd_trace(word: &str, tokens: bool, out: &mut impl Write) -> CliResult {
    let w = parse_word(word, tokens);
    let doc = TraceDocument::new(&w, &run(&w));
    serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_oracle(
    word: &str,
    tokens: bool,
    max_len: usize,
    force: bool,
    out: &mut impl Write,
) -> CliResult {
    let w = parse_word(word, tokens);
    let oracle = if force {
        Oracle::unbounded()
    } else {
        Oracle::with_max_len(max_len)
    };
    let v = oracle
        .min_expanding(&w)
        .map_err(|e| CliError::Guard(format!("{e}; raise it with --max-len or pass --force")))?;
    writeln!(out, "{}", verdict(v.primitive()))?;
    writeln!(out, "min |E|: {}", v.min_size)?;
    let e: Vec<&str> = v.expanding.iter().map(|&a| w.symbol(a)).collect();
    writeln!(out, "E: {}", e.join(" "))?;
    let blocks: Vec<String> = v
        .cuts
        .windows(2)
        .map(|c| w.render(w.between(c[0], c[1])))
        .collect();
    writeln!(out, "witness: {}", blocks.join(factor_separator(&w)))?;
    Ok(())
}

fn cmd_gen(corpus: &Corpus, out: &mut impl Write) -> CliResult {
    let words = corpus_words(corpus)?
        .ok_or_else(|| CliError::Usage("gen needs --family or --random".into()))?;
    for w in words {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

struct BenchRow {
    n: usize,
    m: usize,
    expanding: usize,
    rounds: usize,
    scanned: usize,
    edges: usize,
    nanos: u128,
}

fn bench_row(w: &Word) -> BenchRow {
    let t = Instant::now();
    let res = run(w);
    let nanos = t.elapsed().as_nanos();
    BenchRow {
        n: w.len(),
        m: w.alphabet_size(),
        expanding: res.expanding.len(),
        rounds: res.round_count(),
        scanned: res.counters.positions_scanned(),
        edges: res.counters.edges_added,
        nanos,
    }
}

fn cmd_bench(
    corpus: &Corpus,
    file: Option<&PathBuf>,
    tokens: bool,
    csv: bool,
    out: &mut impl Write,
) -> CliResult {
    let words = match corpus_words(corpus)? {
        Some(words) => words,
        None => read_lines(file)?
            .iter()
            .map(|l| parse_word(l, tokens))
            .collect(),
    };
    // sequential so timings are not skewed by contention
    let rows: Vec<BenchRow> = words.iter().map(bench_row).collect();
    let header = [
        "n",
        "m",
        "expanding",
        "rounds",
        "scanned",
        "edges",
        "nanoseconds",
    ];
    if csv {
        let mut wtr = csv::Writer::from_writer(&mut *out);
        wtr.write_record(header).map_err(io::Error::from)?;
        for r in &rows {
            wtr.serialize((r.n, r.m, r.expanding, r.rounds, r.scanned, r.edges, r.nanos))
                .map_err(io::Error::from)?;
        }
        wtr.flush()?;
    } else {
        writeln!(
            out,
            "{:>8} {:>6} {:>9} {:>6} {:>10} {:>8} {:>12}",
            header[0], header[1], header[2], header[3], header[4], header[5], header[6]
        )?;
        for r in &rows {
            writeln!(
                out,
                "{:>8} {:>6} {:>9} {:>6} {:>10} {:>8} {:>12}",
                r.n, r.m, r.expanding, r.rounds, r.scanned, r.edges, r.nanos
            )?;
        }
    }
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let tokens = cli.tokens;
    match &cli.command {
        Command::Check { file } => cmd_check(file.as_ref(), tokens, &mut out)?,
        Command::Factorize { word, json } => cmd_factorize(word, tokens, *json, &mut out)?,
        Command::Trace { word } => cmd_trace(word, tokens, &mut out)?,
        Command::Oracle {
            word,
            max_len,
            force,
        } => cmd_oracle(word, tokens, *max_len, *force, &mut out)?,
        Command::Gen(corpus) => cmd_gen(corpus, &mut out)?,
        Command::Bench { corpus, file, csv } => {
            cmd_bench(corpus, file.as_ref(), tokens, *csv, &mut out)?
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("morphic: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
