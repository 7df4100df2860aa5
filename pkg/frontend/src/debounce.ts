/** Trailing-edge debounce used to coalesce slider drag events. */

export interface Debounced<A extends unknown[]> {
  call(...args: A): void;
  /** drop the pending invocation, if any */
  cancel(): void;
  /** run the pending invocation immediately */
  flush(): void;
  pending(): boolean;
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let last: A | null = null;

  const fire = (): void => {
    timer = null;
    if (last !== null) {
      const args = last;
      last = null;
      fn(...args);
    }
  };

  return {
    call(...args: A): void {
      last = args;
      if (timer !== null) clearTimeout(timer);
      timer = setTimeout(fire, waitMs);
    },
    cancel(): void {
      if (timer !== null) clearTimeout(timer);
      timer = null;
      last = null;
    },
    flush(): void {
      if (timer !== null) {
        clearTimeout(timer);
        fire();
      }
    },
    pending(): boolean {
      return timer !== null;
    },
  };
}
