package com.example.anim;

import android.animation.ObjectAnimator;

public class QuickFade {
    void fade(View target) {
        ObjectAnimator fader = ObjectAnimator.ofFloat(target, "alpha", 1f, 0f);
        fader.setDuration(1500);
        fader.setRepeatCount(3);
        fader.start();
    }
}
