//! Generator words and the rewriting system that brings them to tail
//! normal form.

mod parse;
mod rewrite;
mod rules;
mod word;

pub use parse::parse;
pub use rewrite::{rewrite_to_normal, Rewriter, Rewritten, Strategy, DEFAULT_STEP_BUDGET};
pub use rules::{RewriteRule, RuleFamily, RuleTable};
pub use word::{GeneratorWord, PsiWord};
