package com.example.noise;

import java.util.ArrayList;
import java.util.HashMap;
import java.util.List;
import java.util.Map;

class GenericsHeavy<K extends Comparable<? super K>, V> {
    private final Map<K, List<? extends V>> table = new HashMap<>();
    private final List<Map.Entry<K, V>> order = new ArrayList<>();

    <R> R reduce(R seed, Combiner<? super V, R> combiner) {
        R acc = seed;
        for (List<? extends V> bucket : table.values()) {
            for (V item : bucket) {
                acc = combiner.fold(acc, item);
            }
        }
        return acc;
    }

    static <E> List<E> copyOf(List<E> source) {
        List<E> out = new ArrayList<E>(source.size());
        out.addAll(source);
        return out;
    }

    interface Combiner<V, R> {
        R fold(R acc, V next);
    }
}
