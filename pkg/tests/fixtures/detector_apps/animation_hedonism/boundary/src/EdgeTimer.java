package com.example.anim;

import android.animation.ValueAnimator;

public class EdgeTimer {
    void pulse() {
        ValueAnimator timer = ValueAnimator.ofInt(0, 100);
        timer.setDuration(2000);
        timer.start();
    }
}
