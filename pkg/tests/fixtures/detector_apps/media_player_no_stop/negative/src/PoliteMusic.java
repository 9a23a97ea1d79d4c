package com.example.sound;

import android.media.MediaPlayer;

public class PoliteMusic {
    MediaPlayer player;

    void play() {
        player.start();
    }

    void onPause() {
        player.pause();
    }
}
