use rayon::prelude::*;

/// `MHS_NO_PARALLEL=1` forces serial evaluation.
pub fn serial_forced() -> bool {
    std::env::var("MHS_NO_PARALLEL").is_ok_and(|v| v == "1")
}

/// Order-preserving map, parallel unless disabled.
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if serial_forced() {
        items.into_iter().map(f).collect()
    } else {
        items.into_par_iter().map(f).collect()
    }
}
