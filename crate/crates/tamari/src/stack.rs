//! Stack headroom for the recursive algorithms.
//!
//! Derivation height is bounded by the total size of the sequent, so inputs
//! in the tens of thousands of atoms can out-grow the default thread stack.
//! Entry points whose recursion depth scales with the input run the work on
//! a dedicated thread with a proportionally sized stack once a hint passes
//! the inline threshold; small inputs stay on the caller's stack.

use std::thread;

const INLINE_DEPTH: usize = 1 << 10;
const MIN_STACK: usize = 64 << 20;
const FRAME_ALLOWANCE: usize = 8 << 10;

pub(crate) fn with_headroom<T, F>(depth_hint: usize, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    if depth_hint <= INLINE_DEPTH {
        return f();
    }
    let stack_size = depth_hint.saturating_mul(FRAME_ALLOWANCE).max(MIN_STACK);
    thread::scope(|scope| {
        let handle = thread::Builder::new()
            .stack_size(stack_size)
            .spawn_scoped(scope, f)
            .expect("failed to spawn worker thread");
        match handle.join() {
            Ok(value) => value,
            Err(payload) => std::panic::resume_unwind(payload),
        }
    })
}
