//! `cryptobench`: command-line front end to the workbench.
//!
//! Exit codes: 0 on success, 2 on invalid arguments, 3 when an attack or a
//! verification reports failure.

use std::fmt;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cryptobench::aowf::{
    certificate_domain, certificate_element, check_associative, check_commutative, check_weakly_associative,
    shift_domain, sigma_cert, sigma_strong_default, totalize, BinaryFn, PropertyResult,
};
use cryptobench::attacks::{
    broadcast_report, forgery_report, pollard_pm1_report, superencryption_report, trial_division_report,
    wiener_report, AttackReport, Recovered,
};
use cryptobench::classical::{
    caesar, format_rational, frequency_count, hill, one_time_pad, systems, vigenere, Bits, Direction,
    FiniteCryptosystem, HillKey, LetterString,
};
use cryptobench::graphs::{enumerate_3colorings, Graph};
use cryptobench::hexnat::{self, to_hex};
use cryptobench::numtheory::nat;
use cryptobench::protocols::{
    dh_keyagree, dh_mitm, elgamal_exchange, elgamal_signature_exchange, hybrid_dh, rabi_sherman_exchange,
    rivest_sherman_keyagree, shamir_no_key, DhParams, ShamirOptions, Transcript,
};
use cryptobench::rng::{Coins, WorkbenchRng};
use cryptobench::rsa::{
    rsa_decrypt, rsa_decrypt_crt, rsa_encrypt, rsa_keygen, rsa_sign, rsa_verify, RsaPrivateKey, RsaPublicKey,
};
use cryptobench::zkp::{
    fs_keygen, fs_round, fs_simulator_round, gmw_keygen, gmw_round, gmw_simulator_round, gni_round, FsResponder,
    GmwResponder, GniProver, RoundTriple,
};
use cryptobench::{Error, Integer, Natural};

#[derive(Parser)]
#[command(name = "cryptobench", version, about = "Desk-scale cryptographic protocol workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical ciphers and letter frequencies.
    Classical {
        #[command(subcommand)]
        cipher: ClassicalCmd,
    },
    /// Perfect-secrecy analysis of a finite cryptosystem.
    Analyze(AnalyzeArgs),
    /// RSA key generation and raw operations.
    Rsa {
        #[command(subcommand)]
        op: RsaCmd,
    },
    /// Attacks on raw RSA; each prints one JSON report.
    Attack {
        #[command(subcommand)]
        attack: AttackCmd,
    },
    /// Protocol runs over the simulated channel, printed as JSON-lines transcripts.
    Protocol {
        #[command(subcommand)]
        protocol: ProtocolCmd,
    },
    /// Interactive-proof experiments.
    Zk {
        #[command(subcommand)]
        proof: ZkCmd,
    },
    /// Exhaustive property checks of two-ary functions.
    AowfCheck(AowfArgs),
}

/// Seed shared by every randomized subcommand.
#[derive(Args, Clone, Copy)]
struct SeedArg {
    #[arg(long, env = "WORKBENCH_SEED")]
    seed: Option<u64>,
}

impl SeedArg {
    fn require(self) -> Result<u64, CliError> {
        self.seed
            .ok_or_else(|| CliError::Usage("this subcommand needs --seed (or WORKBENCH_SEED)".into()))
    }

    fn rng(self) -> Result<WorkbenchRng, CliError> {
        Ok(WorkbenchRng::from_seed(self.require()?))
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DirectionArg {
    #[arg(long)]
    encrypt: bool,
    #[arg(long)]
    decrypt: bool,
}

impl DirectionArg {
    fn get(&self) -> Direction {
        if self.encrypt {
            Direction::Encrypt
        } else {
            Direction::Decrypt
        }
    }
}

#[derive(Subcommand)]
enum ClassicalCmd {
    Caesar {
        #[arg(long)]
        key: u8,
        #[command(flatten)]
        direction: DirectionArg,
        text: String,
    },
    Vigenere {
        #[arg(long)]
        key: String,
        #[command(flatten)]
        direction: DirectionArg,
        text: String,
    },
    /// Hill cipher; the key matrix is given row by row, rows separated by `;`.
    Hill {
        #[arg(long, allow_hyphen_values = true)]
        key: String,
        #[command(flatten)]
        direction: DirectionArg,
        text: String,
    },
    /// XOR with a key of equal length; both given as 0/1 strings.
    Otp {
        #[arg(long)]
        key: String,
        data: String,
    },
    /// Letter frequencies of a text (file, argument or stdin); non-letters are ignored.
    Freq {
        #[arg(long)]
        file: Option<PathBuf>,
        text: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuiltinSystem {
    Buchmann,
    Otp2,
    Otp3,
    Shift26,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Table file (`P:`/`C:`/`K:` headers, `dist` and `enc` lines).
    #[arg(conflicts_with = "system", required_unless_present = "system")]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    system: Option<BuiltinSystem>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum RsaCmd {
    /// Prints the `rsa-pub` and `rsa-priv` lines.
    Keygen {
        #[arg(long, value_parser = natural, requires = "q", conflicts_with = "bits")]
        p: Option<Natural>,
        #[arg(long, value_parser = natural, requires = "p")]
        q: Option<Natural>,
        #[arg(long, required_unless_present = "p")]
        bits: Option<u64>,
        #[arg(long, value_parser = natural)]
        e: Option<Natural>,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Encrypt {
        /// Key file or literal `rsa-pub ...` line.
        #[arg(long)]
        key: String,
        #[arg(long, value_parser = natural)]
        m: Natural,
    },
    Decrypt {
        /// Key file or literal `rsa-priv ...` line.
        #[arg(long)]
        key: String,
        #[arg(long, value_parser = natural)]
        c: Natural,
        #[arg(long)]
        crt: bool,
    },
    Sign {
        #[arg(long)]
        key: String,
        #[arg(long, value_parser = natural)]
        m: Natural,
    },
    /// Exit code 3 when the signature is invalid.
    Verify {
        #[arg(long)]
        key: String,
        #[arg(long, value_parser = natural)]
        m: Natural,
        #[arg(long, value_parser = natural)]
        sig: Natural,
    },
}

#[derive(Subcommand)]
enum AttackCmd {
    TrialDivision {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long, value_parser = natural)]
        bound: Option<Natural>,
    },
    Pollard {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    Wiener {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long, value_parser = natural)]
        e: Natural,
    },
    /// Three ciphertexts of one message under `e = 3`.
    Broadcast {
        #[arg(long, value_parser = natural, value_delimiter = ',', num_args = 3, required = true)]
        n: Vec<Natural>,
        #[arg(long, value_parser = natural, value_delimiter = ',', num_args = 3, required = true)]
        c: Vec<Natural>,
    },
    /// Multiplicative forgery from known `m:sig` pairs.
    Forge {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long, value_parser = natural)]
        e: Natural,
        #[arg(long, value_delimiter = ',', required = true)]
        known: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        exponents: Vec<i64>,
        #[arg(long, value_parser = natural, default_value = "1")]
        r: Natural,
    },
    /// Decrypts `c` through a decryption oracle built from a private key,
    /// querying it only on a blinded value.
    Blinding {
        /// Key file holding both the `rsa-pub` and `rsa-priv` lines.
        #[arg(long)]
        key: String,
        #[arg(long, value_parser = natural)]
        c: Natural,
        #[arg(long, value_parser = natural)]
        r: Option<Natural>,
        #[command(flatten)]
        seed: SeedArg,
    },
    Superencryption {
        #[arg(long, value_parser = natural)]
        n: Natural,
        #[arg(long, value_parser = natural)]
        e: Natural,
        #[arg(long, value_parser = natural)]
        c: Natural,
        #[arg(long, default_value_t = 1_000_000)]
        max_iters: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    seed: SeedArg,
    /// Bit length of the generated prime.
    #[arg(long, default_value_t = 32)]
    bits: u64,
    /// Write the transcript here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaChoice {
    /// Totalized certificate function over 3-colorings of K3.
    Cert,
    Add,
}

#[derive(Subcommand)]
enum ProtocolCmd {
    Dh(RunArgs),
    /// Diffie–Hellman with Erich in the middle.
    Mitm(RunArgs),
    Hybrid {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "ATTACKATDAWN")]
        message: String,
    },
    Elgamal {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_parser = natural)]
        message: Option<Natural>,
    },
    ElgamalSign {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_parser = natural)]
        message: Option<Natural>,
    },
    Shamir {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_parser = natural)]
        message: Option<Natural>,
    },
    RivestSherman {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "cert")]
        sigma: SigmaChoice,
    },
    RabiSherman {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "cert")]
        sigma: SigmaChoice,
    },
    /// Parses a transcript file and prints it back.
    Read { file: PathBuf },
}

#[derive(Args)]
struct ZkCommon {
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = 20)]
    rounds: u64,
    /// Write the per-round lines here; the summary still goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the simulator instead of the real prover.
    #[arg(long)]
    simulate: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FsProver {
    Honest,
    Impostor,
    ZeroFraud,
}

#[derive(Subcommand)]
enum ZkCmd {
    /// Graph-isomorphism zero-knowledge protocol on a random key.
    Gmw {
        #[command(flatten)]
        common: ZkCommon,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long)]
        impostor: bool,
    },
    /// Fiat–Shamir identification.
    Fs {
        #[command(flatten)]
        common: ZkCommon,
        #[arg(long, default_value_t = 32)]
        bits: u64,
        #[arg(long, value_enum, default_value = "honest")]
        prover: FsProver,
        /// Reject `x = 0` or `y = 0` (default).
        #[arg(long, overrides_with = "no_strict")]
        strict: bool,
        #[arg(long, overrides_with = "strict")]
        no_strict: bool,
    },
    /// Graph non-isomorphism protocol; defaults to the path and the star on 4 vertices.
    Gni {
        #[command(flatten)]
        common: ZkCommon,
        #[arg(long)]
        graph1: Option<PathBuf>,
        #[arg(long)]
        graph2: Option<PathBuf>,
        #[arg(long)]
        guessing: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Associative,
    WeaklyAssociative,
    Commutative,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionChoice {
    Cert,
    Add,
    FloorSub,
    SigmaStrong,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphChoice {
    K3,
    P3,
    C5,
}

#[derive(Args)]
struct AowfArgs {
    #[arg(value_enum, default_value = "all")]
    property: Property,
    #[arg(long, value_enum, default_value = "cert")]
    function: FunctionChoice,
    /// Certificate domain for `--function cert`.
    #[arg(long, value_enum, default_value = "k3", conflicts_with = "graph_file")]
    graph: GraphChoice,
    #[arg(long)]
    graph_file: Option<PathBuf>,
    /// Check the 0-absorbing total extension instead.
    #[arg(long)]
    totalize: bool,
    /// Domain `[0, range)` for the arithmetic functions.
    #[arg(long, default_value_t = 30)]
    range: u64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ProtocolAbort(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult = Result<(), CliError>;

fn natural(s: &str) -> Result<Natural, String> {
    hexnat::parse(s).map_err(|e| e.to_string())
}

fn letters(s: &str) -> Result<LetterString, CliError> {
    Ok(s.parse()?)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// A key given either literally or as a file holding a line with `prefix`.
fn key_line(source: &str, prefix: &str) -> Result<String, CliError> {
    let text = if source.trim_start().starts_with("rsa-") {
        source.to_string()
    } else {
        read_file(Path::new(source))?
    };
    text.lines()
        .map(str::trim)
        .find(|l| l.split_whitespace().next() == Some(prefix))
        .map(str::to_string)
        .ok_or_else(|| CliError::Usage(format!("no `{prefix}` line in {source}")))
}

fn public_key(source: &str) -> Result<RsaPublicKey, CliError> {
    Ok(key_line(source, "rsa-pub")?.parse()?)
}

fn private_key(source: &str) -> Result<RsaPrivateKey, CliError> {
    Ok(key_line(source, "rsa-priv")?.parse()?)
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(value).expect("value serializes"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cryptobench: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Failed(_) => 3,
            })
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Classical { cipher } => classical_cmd(cipher),
        Command::Analyze(args) => analyze_cmd(args),
        Command::Rsa { op } => rsa_cmd(op),
        Command::Attack { attack } => attack_cmd(attack),
        Command::Protocol { protocol } => protocol_cmd(protocol),
        Command::Zk { proof } => zk_cmd(proof),
        Command::AowfCheck(args) => aowf_cmd(args),
    }
}

fn hill_key(source: &str) -> Result<HillKey, CliError> {
    let rows = source
        .split(';')
        .map(|row| {
            row.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>()
                        .map(|v| v.rem_euclid(26) as u8)
                        .map_err(|_| CliError::Usage(format!("bad matrix entry {t:?}")))
                })
                .collect::<Result<Vec<u8>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HillKey::new(rows)?)
}

fn classical_cmd(cmd: ClassicalCmd) -> CliResult {
    let out = match cmd {
        ClassicalCmd::Caesar { key, direction, text } => caesar(key, &letters(&text)?, direction.get())?.to_string(),
        ClassicalCmd::Vigenere { key, direction, text } => {
            vigenere(&letters(&key)?, &letters(&text)?, direction.get())?.to_string()
        }
        ClassicalCmd::Hill { key, direction, text } => hill(&hill_key(&key)?, &letters(&text)?, direction.get())?.to_string(),
        ClassicalCmd::Otp { key, data } => {
            let (key, data): (Bits, Bits) = (key.parse()?, data.parse()?);
            one_time_pad(&key, &data)?.to_string()
        }
        ClassicalCmd::Freq { file, text, json } => {
            let raw = match (file, text) {
                (Some(path), _) => read_file(&path)?,
                (None, Some(text)) => text,
                (None, None) => {
                    let mut s = String::new();
                    std::io::stdin()
                        .read_to_string(&mut s)
                        .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
                    s
                }
            };
            let cleaned: String = raw.chars().filter(char::is_ascii_alphabetic).map(|c| c.to_ascii_uppercase()).collect();
            let freq = frequency_count(&letters(&cleaned)?)?;
            if json {
                let map: serde_json::Map<_, _> =
                    freq.iter().map(|(c, r)| (c.to_string(), json!(format_rational(r)))).collect();
                print_json(&map);
            } else {
                for (c, r) in &freq {
                    println!("{c} {}", format_rational(r));
                }
            }
            return Ok(());
        }
    };
    println!("{out}");
    Ok(())
}

fn analyze_cmd(args: AnalyzeArgs) -> CliResult {
    let system = match (args.file, args.system) {
        (Some(path), _) => FiniteCryptosystem::parse(&read_file(&path)?)?,
        (None, Some(BuiltinSystem::Buchmann)) => systems::buchmann(),
        (None, Some(BuiltinSystem::Otp2)) => systems::one_time_pad(2, None)?,
        (None, Some(BuiltinSystem::Otp3)) => systems::one_time_pad(3, None)?,
        (None, Some(BuiltinSystem::Shift26)) => systems::shift_cipher(26)?,
        (None, None) => return Err(CliError::Usage("give a table file or --system".into())),
    };
    let verdict = system.is_perfectly_secret();
    let shannon = system.shannon_conditions().ok();
    let mut posteriors = Vec::new();
    for (ci, c) in system.ciphertexts().iter().enumerate() {
        for (pi, p) in system.plaintexts().iter().enumerate() {
            if let Ok(post) = system.posterior(pi, ci) {
                posteriors.push((p.clone(), c.clone(), format_rational(&post)));
            }
        }
    }
    if args.json {
        print_json(&json!({
            "perfectly_secret": verdict.perfectly_secret,
            "witness": verdict.witness,
            "shannon": shannon,
            "ciphertext_probabilities": system.ciphertexts().iter().enumerate()
                .map(|(i, c)| (c.clone(), format_rational(&system.ciphertext_prob(i))))
                .collect::<std::collections::BTreeMap<_, _>>(),
            "posteriors": posteriors.iter().map(|(p, c, v)| json!({"p": p, "c": c, "value": v})).collect::<Vec<_>>(),
        }));
        return Ok(());
    }
    println!("perfectly secret: {}", verdict.perfectly_secret);
    if let Some((p, c)) = &verdict.witness {
        println!("witness: Pr({p} | {c}) != Pr({p})");
    }
    match shannon {
        Some(s) => println!("uniform keys: {}\nunique key per (p, c): {}", s.uniform_keys, s.unique_key_per_pair),
        None => println!("Shannon conditions: not applicable (needs |C| = |K| and Pr(p) > 0)"),
    }
    for (i, c) in system.ciphertexts().iter().enumerate() {
        println!("Pr({c}) = {}", format_rational(&system.ciphertext_prob(i)));
    }
    for (p, c, v) in posteriors {
        println!("Pr({p} | {c}) = {v}");
    }
    Ok(())
}

fn rsa_cmd(op: RsaCmd) -> CliResult {
    match op {
        RsaCmd::Keygen { p, q, bits, e, seed, out } => {
            let (pk, sk) = match (p, q, bits) {
                (Some(p), Some(q), _) => RsaPrivateKey::from_primes(&p, &q, &e.unwrap_or_else(|| nat(65537)))?,
                (_, _, Some(bits)) => rsa_keygen(bits, e.as_ref(), &mut seed.rng()?)?,
                _ => return Err(CliError::Usage("give --p and --q, or --bits".into())),
            };
            let text = format!("{pk}\n{sk}\n");
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
        }
        RsaCmd::Encrypt { key, m } => println!("{}", to_hex(&rsa_encrypt(&public_key(&key)?, &m)?)),
        RsaCmd::Decrypt { key, c, crt } => {
            let sk = private_key(&key)?;
            let m = if crt { rsa_decrypt_crt(&sk, &c)? } else { rsa_decrypt(&sk, &c)? };
            println!("{}", to_hex(&m));
        }
        RsaCmd::Sign { key, m } => println!("{}", to_hex(&rsa_sign(&private_key(&key)?, &m)?)),
        RsaCmd::Verify { key, m, sig } => {
            let ok = rsa_verify(&public_key(&key)?, &m, &sig);
            println!("{}", if ok { "valid" } else { "invalid" });
            if !ok {
                return Err(CliError::Failed("signature does not verify".into()));
            }
        }
    }
    Ok(())
}

fn report(r: AttackReport) -> CliResult {
    print_json(&r);
    if r.succeeded {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} attack did not succeed", r.attack)))
    }
}

fn attack_cmd(attack: AttackCmd) -> CliResult {
    let r = match attack {
        AttackCmd::TrialDivision { n, bound } => trial_division_report(&n, bound.as_ref())?,
        AttackCmd::Pollard { n, bound } => pollard_pm1_report(&n, bound)?,
        AttackCmd::Wiener { n, e } => wiener_report(&RsaPublicKey { n, e }),
        AttackCmd::Broadcast { n, c } => {
            let arr = |v: Vec<Natural>| -> Result<[Natural; 3], CliError> {
                v.try_into().map_err(|_| CliError::Usage("exactly three values are required".into()))
            };
            broadcast_report(&arr(c)?, &arr(n)?)?
        }
        AttackCmd::Forge { n, e, known, exponents, r } => {
            let pairs = known
                .iter()
                .map(|kv| {
                    let (m, s) = kv
                        .split_once(':')
                        .ok_or_else(|| CliError::Usage(format!("known pair {kv:?} is not m:sig")))?;
                    Ok((natural(m).map_err(CliError::Usage)?, natural(s).map_err(CliError::Usage)?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let exponents: Vec<Integer> = exponents.into_iter().map(Integer::from).collect();
            forgery_report(&RsaPublicKey { n, e }, &pairs, &exponents, &r)?
        }
        AttackCmd::Blinding { key, c, r, seed } => {
            let (pk, sk) = (public_key(&key)?, private_key(&key)?);
            let mut rng = match (&r, seed.seed) {
                (Some(_), s) => WorkbenchRng::from_seed(s.unwrap_or(0)),
                (None, _) => seed.rng()?,
            };
            let mut queries = 0;
            let oracle = |x: &Natural| {
                queries += 1;
                rsa_decrypt(&sk, x).expect("blinded value is below n")
            };
            let m = cryptobench::attacks::blinding_attack(&pk, oracle, &c, r.as_ref(), &mut rng)?;
            let ok = rsa_encrypt(&pk, &m)? == c;
            AttackReport {
                attack: "blinding".into(),
                succeeded: ok,
                recovered: ok.then_some(Recovered::Message { m }),
                work: queries,
            }
        }
        AttackCmd::Superencryption { n, e, c, max_iters } => superencryption_report(&RsaPublicKey { n, e }, &c, max_iters)?,
    };
    report(r)
}

/// Emits a transcript and fails with exit code 3 when `ok` is false.
fn emit_transcript(mut t: Transcript, seed: u64, out: Option<&Path>, ok: bool, what: &str) -> CliResult {
    t.seed = Some(seed);
    match out {
        Some(path) => {
            t.write(path)?;
            println!("{} {} messages -> {}", t.protocol, t.messages.len(), path.display());
        }
        None => print!("{}", t.to_jsonl()),
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{what} failed")))
    }
}

fn k3_sigma_element(rng: &mut WorkbenchRng) -> Result<Natural, CliError> {
    let g = Graph::complete(3);
    let colorings = enumerate_3colorings(&g)?;
    let psi = &colorings[rng.below(colorings.len() as u64) as usize];
    Ok(certificate_element(&g, psi) + 1u32)
}

fn add(a: &Natural, b: &Natural) -> Option<Natural> {
    Some(a + b)
}

fn protocol_cmd(cmd: ProtocolCmd) -> CliResult {
    let (run, seed, mut rng) = match &cmd {
        ProtocolCmd::Read { file } => {
            print!("{}", Transcript::read(file)?.to_jsonl());
            return Ok(());
        }
        ProtocolCmd::Dh(run) | ProtocolCmd::Mitm(run) => (run, run.seed.require()?, run.seed.rng()?),
        ProtocolCmd::Hybrid { run, .. }
        | ProtocolCmd::Elgamal { run, .. }
        | ProtocolCmd::ElgamalSign { run, .. }
        | ProtocolCmd::Shamir { run, .. }
        | ProtocolCmd::RivestSherman { run, .. }
        | ProtocolCmd::RabiSherman { run, .. } => (run, run.seed.require()?, run.seed.rng()?),
    };
    let out = run.out.as_deref();
    let params = DhParams::generate(run.bits, &mut rng)?;
    let p = params.p().clone();
    let message_or_random = |m: &Option<Natural>, rng: &mut WorkbenchRng| m.clone().unwrap_or_else(|| rng.range(&nat(1), &p));
    match &cmd {
        ProtocolCmd::Dh(_) => {
            let (a, b) = (params.random_exponent(&mut rng), params.random_exponent(&mut rng));
            let k = dh_keyagree(&params, &a, &b)?;
            let ok = k.agreed();
            emit_transcript(k.transcript, seed, out, ok, "key agreement")
        }
        ProtocolCmd::Mitm(_) => {
            let draws: Vec<Natural> = (0..4).map(|_| params.random_exponent(&mut rng)).collect();
            let m = dh_mitm(&params, &draws[0], &draws[1], &draws[2], &draws[3])?;
            let ok = m.erich_alice_side == m.k_alice && m.erich_bob_side == m.k_bob;
            emit_transcript(m.transcript, seed, out, ok, "interception")
        }
        ProtocolCmd::Hybrid { message, .. } => {
            let m = letters(message)?;
            let (a, b) = (params.random_exponent(&mut rng), params.random_exponent(&mut rng));
            let h = hybrid_dh(&params, &b, &a, &m)?;
            let ok = h.recovered == m;
            emit_transcript(h.transcript, seed, out, ok, "hybrid decryption")
        }
        ProtocolCmd::Elgamal { message, .. } => {
            let b = params.random_exponent(&mut rng);
            let a = params.random_unit_exponent(&mut rng);
            let m = message_or_random(message, &mut rng);
            let o = elgamal_exchange(&params, &b, &a, &m)?;
            let ok = o.recovered == m;
            emit_transcript(o.transcript, seed, out, ok, "ElGamal decryption")
        }
        ProtocolCmd::ElgamalSign { message, .. } => {
            let b = params.random_exponent(&mut rng);
            let r = params.random_unit_exponent(&mut rng);
            let m = message_or_random(message, &mut rng);
            let o = elgamal_signature_exchange(&params, &b, &r, &m)?;
            let ok = o.verified;
            emit_transcript(o.transcript, seed, out, ok, "ElGamal signature verification")
        }
        ProtocolCmd::Shamir { message, .. } => {
            let (a, b) = (params.random_unit_exponent(&mut rng), params.random_unit_exponent(&mut rng));
            let m = message_or_random(message, &mut rng);
            let o = shamir_no_key(&p, &a, &b, &m, ShamirOptions::default())?;
            let ok = o.recovered == m;
            emit_transcript(o.transcript, seed, out, ok, "Shamir transfer")
        }
        ProtocolCmd::RivestSherman { sigma, .. } => {
            let k = match sigma {
                SigmaChoice::Cert => {
                    let xs = [k3_sigma_element(&mut rng)?, k3_sigma_element(&mut rng)?, k3_sigma_element(&mut rng)?];
                    rivest_sherman_keyagree(&totalize(sigma_cert), &xs[0], &xs[1], &xs[2])?
                }
                SigmaChoice::Add => {
                    let (x, y, z) = (rng.bits(run.bits), rng.bits(run.bits), rng.bits(run.bits));
                    rivest_sherman_keyagree(&add, &x, &y, &z)?
                }
            };
            let ok = k.agreed();
            emit_transcript(k.transcript, seed, out, ok, "key agreement")
        }
        ProtocolCmd::RabiSherman { sigma, .. } => {
            let o = match sigma {
                SigmaChoice::Cert => {
                    let xs = [k3_sigma_element(&mut rng)?, k3_sigma_element(&mut rng)?, k3_sigma_element(&mut rng)?];
                    rabi_sherman_exchange(&totalize(sigma_cert), &xs[0], &xs[1], &xs[2])?
                }
                SigmaChoice::Add => {
                    let (x, y, m) = (rng.bits(run.bits), rng.bits(run.bits), rng.bits(run.bits));
                    rabi_sherman_exchange(&add, &x, &y, &m)?
                }
            };
            let ok = o.verified;
            emit_transcript(o.transcript, seed, out, ok, "signature verification")
        }
        ProtocolCmd::Read { .. } => unreachable!("handled above"),
    }
}

/// Runs `rounds` rounds and prints the per-round lines and the summary.
fn zk_run(
    common: &ZkCommon,
    mut round: impl FnMut(&mut WorkbenchRng) -> Result<(RoundTriple, bool, u64), CliError>,
) -> CliResult {
    let seed = common.seed.require()?;
    if common.rounds == 0 {
        return Err(CliError::Usage("--rounds must be positive".into()));
    }
    let mut rng = WorkbenchRng::from_seed(seed);
    let mut lines = String::new();
    let (mut passed, mut attempts) = (0u64, 0u64);
    for i in 1..=common.rounds {
        let (triple, verdict, tries) = round(&mut rng)?;
        passed += verdict as u64;
        attempts += tries;
        lines += &serde_json::to_string(&json!({
            "round": i,
            "commitment": triple.commitment,
            "challenge": triple.challenge,
            "response": triple.response,
            "verdict": verdict,
        }))
        .expect("round serializes");
        lines.push('\n');
    }
    match &common.out {
        Some(path) => write_file(path, &lines)?,
        None => print!("{lines}"),
    }
    let accepted = passed == common.rounds;
    let mut summary = json!({
        "accept_rate": format!("{passed}/{}", common.rounds),
        "rounds": common.rounds,
        "seed": seed,
        "accepted": accepted,
    });
    if common.simulate {
        summary["attempts"] = json!(format!("{attempts}/{}", common.rounds));
    }
    print_json(&summary);
    if accepted {
        Ok(())
    } else {
        Err(CliError::Failed(format!("verifier rejected {} of {} rounds", common.rounds - passed, common.rounds)))
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(read_file(path)?.parse()?)
}

fn zk_cmd(cmd: ZkCmd) -> CliResult {
    match cmd {
        ZkCmd::Gmw { common, vertices, impostor } => {
            let mut keygen_rng = common.seed.rng()?.split();
            let (public, secret) = gmw_keygen(vertices, &mut keygen_rng)?;
            let responder = if impostor {
                GmwResponder::Impostor
            } else {
                GmwResponder::KnowsSecret(secret)
            };
            let simulate = common.simulate;
            zk_run(&common, |rng| {
                if simulate {
                    let (t, tries) = gmw_simulator_round(&public, rng)?;
                    Ok((t, true, tries))
                } else {
                    let (t, v) = gmw_round(&public, &responder, rng)?;
                    Ok((t, v, 1))
                }
            })
        }
        ZkCmd::Fs { common, bits, prover, strict: _, no_strict } => {
            let keys = fs_keygen(bits, &mut common.seed.rng()?.split())?;
            let public = keys.public();
            let responder = match prover {
                FsProver::Honest => FsResponder::KnowsSecret(keys.s.clone()),
                FsProver::Impostor => FsResponder::Impostor,
                FsProver::ZeroFraud => FsResponder::ZeroFraud,
            };
            let strict = !no_strict;
            let simulate = common.simulate;
            zk_run(&common, |rng| {
                if simulate {
                    let (t, tries) = fs_simulator_round(&public, rng)?;
                    Ok((t, true, tries))
                } else {
                    let (t, v) = fs_round(&public, &responder, strict, rng)?;
                    Ok((t, v, 1))
                }
            })
        }
        ZkCmd::Gni { common, graph1, graph2, guessing } => {
            if common.simulate {
                return Err(CliError::Usage("the GNI protocol has no simulator".into()));
            }
            let g1 = graph1.as_deref().map(read_graph).transpose()?.unwrap_or_else(|| Graph::path(4));
            let g2 = graph2.as_deref().map(read_graph).transpose()?.unwrap_or_else(|| Graph::star(4));
            let prover = if guessing { GniProver::Guessing } else { GniProver::Honest };
            zk_run(&common, |rng| {
                let (t, v) = gni_round(&g1, &g2, prover, rng)?;
                Ok((t, v, 1))
            })
        }
    }
}

fn floor_sub(a: &Natural, b: &Natural) -> Option<Natural> {
    Some(if a > b { a - b } else { Natural::default() })
}

fn run_checks(f: &impl BinaryFn, domain: &[Natural], property: Property) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    if matches!(property, Property::Associative | Property::All) {
        out.push(check_associative(f, domain));
    }
    if matches!(property, Property::WeaklyAssociative | Property::All) {
        out.push(check_weakly_associative(f, domain));
    }
    if matches!(property, Property::Commutative | Property::All) {
        out.push(check_commutative(f, domain));
    }
    out
}

fn aowf_cmd(args: AowfArgs) -> CliResult {
    let results = match args.function {
        FunctionChoice::Cert => {
            let g = match (&args.graph_file, args.graph) {
                (Some(path), _) => read_graph(path)?,
                (None, GraphChoice::K3) => Graph::complete(3),
                (None, GraphChoice::P3) => Graph::path(3),
                (None, GraphChoice::C5) => Graph::cycle(5)?,
            };
            let domain = certificate_domain(&g)?;
            if args.totalize {
                run_checks(&totalize(sigma_cert), &shift_domain(&domain), args.property)
            } else {
                run_checks(&sigma_cert, &domain, args.property)
            }
        }
        other => {
            let domain: Vec<Natural> = (0..args.range).map(nat).collect();
            let f: fn(&Natural, &Natural) -> Option<Natural> = match other {
                FunctionChoice::Add => add,
                FunctionChoice::FloorSub => floor_sub,
                _ => sigma_strong_default,
            };
            if args.totalize {
                run_checks(&totalize(f), &shift_domain(&domain), args.property)
            } else {
                run_checks(&f, &domain, args.property)
            }
        }
    };
    for r in &results {
        print_json(r);
    }
    match results.iter().find(|r| !r.holds) {
        Some(r) => Err(CliError::Failed(format!("{} does not hold", r.property))),
        None => Ok(()),
    }
}
