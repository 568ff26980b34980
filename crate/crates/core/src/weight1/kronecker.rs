/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: i64) -> i32 {
    assert!(n > 0 && n % 2 == 1, "jacobi symbol needs odd positive n, got {n}");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut s = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            s = -s;
        }
        a %= n;
    }
    if n == 1 {
        s
    } else {
        0
    }
}

/// Kronecker symbol (a/n) for all integers a, n.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut s = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            s = -s;
        }
    }
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            s = -s;
        }
    }
    if n == 1 {
        return s;
    }
    s * jacobi(a, n)
}
