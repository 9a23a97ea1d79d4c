package com.example.promo;

import com.google.android.exoplayer;

public class BarePackage {
    void noop() {
    }
}
