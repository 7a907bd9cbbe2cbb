//! Golden command-line sessions reproducing the worked examples.

use std::process::Command;

pub struct Step {
    pub args: &'static [&'static str],
    pub stdout: &'static str,
    pub code: i32,
}

pub struct Session {
    pub name: &'static str,
    pub steps: Vec<Step>,
}

const S_EVAL: &str = "n!*mfoldInd(n,4,2)+2^n*mfoldInd(n,2,1)";
const COS2: &str = "1/2 + (-1)^(n/2)*mfoldInd(n,2,0)/2";
const RE_ORDER6: &str = "(n + 1)*(n^6 + 14*n^5 + 35*n^4 - 350*n^3 - 2436*n^2 - 5545*n - 4319)*(n - 2)*a(n) \
    - (n - 1)*(n^6 + 8*n^5 - 20*n^4 - 370*n^3 - 1301*n^2 - 1799*n - 838)*a(n + 1) \
    - (n + 1)*(n - 7)*(n^6 + 14*n^5 + 35*n^4 - 350*n^3 - 2436*n^2 - 5545*n - 4319)*a(n + 5) \
    + (n^6 + 8*n^5 - 20*n^4 - 370*n^3 - 1301*n^2 - 1799*n - 838)*(n - 6)*a(n + 6) = 0";
const RETOHTS: &str = "n! - (n-7)*mfoldInd(n,5,1)";
const EX3A: &str = "3^n*mfoldInd(n,3,1)+(2^n+n)*mfoldInd(n,2,0)";
const EX3B: &str = "n!*mfoldInd(n, 4, 3) + pochhammer(2, n)";
const REC3A: &str = "(-353808*n^2-586764*n-150444)*a(n) - 78732*a(n+1) + (442260*n^2+25839*n-44901)*a(n+2) \
+ (13104*n^2+21732*n+25255)*a(n+3) + (-88452*n^2+30213*n+23544)*a(n+4) + (-16380*n^2-957*n+1663)*a(n+5) \
- 729*a(n+6) + (3276*n^2-1119*n-764)*a(n+7) = 0\n";
const REC3A_PRINTED: &str = "(-353808*n^2-586764*n-150444)*a(n)-78732*a(n+1)+(442260*n^2+25839*n-44901)*a(n+2)\
+(13104*n^2+21732*n+25255)*a(n+3)+(-88452*n^2+30213*n+23544)*a(n+4)+(-16380*n^2-957*n+1663)*a(n+5)\
-729*a(n+6)+(3276*n^2-1119*n-764)*a(n+7)=0";
const REC3B: &str = "(n^5+15*n^4+85*n^3+225*n^2+274*n+120)*a(n) + (-n^4-14*n^3-71*n^2-154*n-120)*a(n+1) \
+ (-n-5)*a(n+4) + a(n+5) = 0\n";
const REC3B_PRINTED: &str =
    "(n+4)*(n+3)*(n+2)*(n+1)*(n+5)*a(n)-(n+5)*(n+4)*(n+3)*(n+2)*a(n+1)+(-n-5)*a(n+4)+a(n+5)=0";
const U1: &str = "(n!)^2*mfoldInd(n, 3, 1) + n^3*mfoldInd(n, 2, 1)";
const U2: &str = "(n + 1)*mfoldInd(n, 4, 3)/n! + (n + 2)*mfoldInd(n, 2, 0)";
const PRODUCT_OUT: &str = "n^3*(n+1)/n!*mfoldInd(n,4,3) + n!^2*(n+2)*mfoldInd(n,6,4) + n!*(n+1)*mfoldInd(n,12,7)";
const PRODUCT: &str = "n^3*(n+1)/n!*mfoldInd(n,4,3) + n!^2*(n+2)*mfoldInd(n,6,4) + n!*(n+1)*mfoldInd(n,12,7)\n";
const PRODUCT_PRINTED: &str = "n^3*(n+1)*mfoldInd(n,4,3)/n! + n!^2*(n+2)*mfoldInd(n,6,4) + n!*(n+1)*mfoldInd(n,12,7)";

pub fn sessions() -> Vec<Session> {
    vec![
        Session {
            name: "evaluation and normal forms",
            steps: vec![
                Step { args: &["eval", "mfoldInd(7,3,1)", "--at", "0"], stdout: "1\n", code: 0 },
                Step { args: &["normalize", "mfoldInd(n,3,1)"], stdout: "mfoldInd(n,3,1)\n", code: 0 },
                Step { args: &["eval", S_EVAL, "--at", "6"], stdout: "720\n", code: 0 },
                Step { args: &["normalize", COS2], stdout: "1/2 + 1/2*(-1)^(n/2)*mfoldInd(n,2,0)\n", code: 0 },
            ],
        },
        Session {
            name: "recurrence to term",
            steps: vec![
                Step { args: &["eval", RETOHTS, "--range", "0..6"], stdout: "1\n7\n2\n6\n24\n120\n721\n", code: 0 },
                Step { args: &["verify-rec", "--rec", RE_ORDER6, "--expr", RETOHTS, "--range", "0..100"], stdout: "true\n", code: 0 },
            ],
        },
        Session {
            name: "recurrences of interlaced sums",
            steps: vec![
                Step { args: &["rec", EX3A], stdout: REC3A, code: 0 },
                Step { args: &["verify-rec", "--rec", REC3A_PRINTED, "--expr", EX3A, "--range", "0..100"], stdout: "true\n", code: 0 },
                Step { args: &["rec", EX3B], stdout: REC3B, code: 0 },
                Step { args: &["verify-rec", "--rec", REC3B_PRINTED, "--expr", EX3B, "--range", "0..100"], stdout: "true\n", code: 0 },
            ],
        },
        Session {
            name: "products",
            steps: vec![
                Step { args: &["prod", U1, U2], stdout: PRODUCT, code: 0 },
                Step { args: &["equal", PRODUCT_PRINTED, PRODUCT_OUT], stdout: "true\n", code: 0 },
            ],
        },
    ]
}

pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn hts(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_hts")).args(args).output().expect("binary runs");
    Output {
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
        code: out.status.code().expect("exit code"),
    }
}

/// Runs every step and reports the first mismatch.
pub fn run_session(s: &Session) -> Result<(), String> {
    for step in &s.steps {
        let out = hts(step.args);
        if out.stdout != step.stdout || out.code != step.code {
            return Err(format!(
                "{}: hts {:?} gave {:?} (exit {}), expected {:?} (exit {}); stderr {:?}",
                s.name, step.args, out.stdout, out.code, step.stdout, step.code, out.stderr
            ));
        }
    }
    Ok(())
}
