package com.example.planted;

import android.media.MediaPlayer;

public class Jukebox {
    MediaPlayer player;

    void autoplay() {
        player.start();
    }
}
