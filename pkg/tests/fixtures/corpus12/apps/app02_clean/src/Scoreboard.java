package com.example.clean;

import java.util.ArrayList;
import java.util.List;

public class Scoreboard {
    private final List<Integer> scores = new ArrayList<>();

    void record(int score) {
        scores.add(score);
    }

    int best() {
        int top = 0;
        for (int score : scores) {
            top = Math.max(top, score);
        }
        return top;
    }
}
