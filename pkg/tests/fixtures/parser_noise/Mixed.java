package com.example.noise;

import java.util.ArrayList;
import java.util.List;
import java.util.Map;

@SuppressWarnings("all")
public class Mixed<T extends Comparable<T>> {
    private static final Map<String, List<Integer>> CACHE = new HashMap<>();
    protected int[] counts = new int[]{1, 2, 3};
    private String label = "mixed";

    @Deprecated
    public void shuffle(List<T> items, int rounds) {
        for (int i = 0; i < rounds; i++) {
            counts[i % counts.length] += i > 2 ? i * 2 : -1;
        }
        for (T item : items) {
            registry.record(item.toString());
        }
    }

    void tally(int... extras) {
        int total = 0;
        for (int extra : extras) {
            total += extra;
        }
        helper.accumulate(total);
    }

    private static class Helper {
        Helper(int seed) {
            this.seed = seed;
        }

        int seed;
    }
}
