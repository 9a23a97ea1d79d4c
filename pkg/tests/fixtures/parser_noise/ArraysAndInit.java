package com.example.noise;

class ArraysAndInit {
    static final int[] PRIMES = {2, 3, 5, 7};
    static final String[][] GRID = {{"a", "b"}, {"c"}};

    static {
        registry.prime(PRIMES.length);
    }

    {
        scratch = new int[PRIMES.length];
    }

    int[] scratch;

    int sum(int[] values) {
        int total = 0;
        for (int i = 0; i < values.length; i++) {
            total += values[i];
        }
        int[] doubled = new int[values.length];
        System.arraycopy(values, 0, doubled, 0, values.length);
        return total + doubled[0];
    }
}
