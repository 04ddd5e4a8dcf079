/** Returns a wrapper that runs `fn` only after `wait` ms of call silence. */
export function debounce(fn, wait) {
    let timer;
    return (...args) => {
        if (timer !== undefined)
            clearTimeout(timer);
        timer = setTimeout(() => fn(...args), wait);
    };
}
