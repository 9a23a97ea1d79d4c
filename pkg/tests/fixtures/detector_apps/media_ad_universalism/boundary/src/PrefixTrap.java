package com.example.video;

import com.google.android.exoplayerx.Stats;

public class PrefixTrap {
    Stats stats;

    void ping() {
        stats.record();
    }
}
